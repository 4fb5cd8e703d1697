#include "unigrav/tensor.hpp"

#include <algorithm>

namespace unigrav {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Frame: return "frame error";
    case ErrorKind::Composition: return "unsupported composition";
    case ErrorKind::Numerical: return "numerical failure";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

Event Event::displaced(Axis axis, double d) const {
  Event out = *this;
  switch (axis) {
    case Axis::x1: out.x1 += d; break;
    case Axis::x2: out.x2 += d; break;
    case Axis::x3: out.x3 += d; break;
    case Axis::x4: out.t += d; break;
  }
  return out;
}

bool FourVector::finite() const {
  return std::all_of(c.begin(), c.end(), [](const Complex& z) { return detail::all_finite(z); });
}

FourVector complex_coords(const Event& e, double c) {
  return FourVector{{Complex(e.x1), Complex(e.x2), Complex(e.x3), kI * c * e.t}};
}

Complex dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double max_norm(const FourVector& v) {
  double m = 0.0;
  for (const auto& z : v.c) m = std::max(m, std::abs(z));
  return m;
}

Matrix4 Matrix4::identity() { return diagonal(1.0, 1.0, 1.0, 1.0); }

Matrix4 Matrix4::diagonal(Complex d0, Complex d1, Complex d2, Complex d3) {
  Matrix4 m;
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  m(3, 3) = d3;
  return m;
}

Matrix4& Matrix4::operator+=(const Matrix4& o) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m_[i][j] += o.m_[i][j];
  return *this;
}

Matrix4& Matrix4::operator-=(const Matrix4& o) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m_[i][j] -= o.m_[i][j];
  return *this;
}

Matrix4& Matrix4::operator*=(Complex s) {
  for (auto& row : m_)
    for (auto& x : row) x *= s;
  return *this;
}

bool Matrix4::finite() const {
  for (const auto& row : m_)
    for (const auto& x : row)
      if (!detail::all_finite(x)) return false;
  return true;
}

FourVector mat_apply(const Matrix4& a, const FourVector& x) {
  FourVector y;
  for (std::size_t i = 0; i < 4; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < 4; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix4 mat_mul(const Matrix4& a, const Matrix4& b) {
  Matrix4 c;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Matrix4 transpose(const Matrix4& a) {
  Matrix4 t;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t(i, j) = a(j, i);
  return t;
}

double max_norm(const Matrix4& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double antisymmetry_defect(const Matrix4& a) { return max_norm(a + transpose(a)); }

bool is_orthogonal(const Matrix4& a, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Domain, "is_orthogonal: tol must be positive");
  return max_norm(mat_mul(a, transpose(a)) - Matrix4::identity()) <= tol;
}

Matrix4 antisymmetrize_from_upper(const Matrix4& a) {
  Matrix4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      out(i, j) = a(i, j);
      out(j, i) = -a(i, j);
    }
  return out;
}

double norm(const Vec3& v) { return std::sqrt(dot3(v, v)); }
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

}  // namespace unigrav
