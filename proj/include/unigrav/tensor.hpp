#pragma once

// Complex 4-vectors and 4x4 matrices under the x4 = ict convention.
//
// Indices are 0-based in code: components 0,1,2 are the spatial axes x1,x2,x3
// and component 3 is x4 = ict. The bilinear form is Euclidean and never
// conjugates; "orthogonal" means A * A^t = I with plain transpose.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include "unigrav/error.hpp"

namespace unigrav {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

enum class Axis : int { x1 = 0, x2 = 1, x3 = 2, x4 = 3 };

/// Spacetime event with real coordinates. The complex coordinate x4 = i*c*t is
/// never stored; see complex_coords().
struct Event {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double t = 0.0;

  Vec3 position() const { return {x1, x2, x3}; }
  double radius() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }
  bool finite() const {
    return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3) && std::isfinite(t);
  }
  /// Displaces coordinate `axis` by `d` (for x4 the displacement is applied to t).
  Event displaced(Axis axis, double d) const;

  static Event at(const Vec3& x, double t = 0.0) { return {x[0], x[1], x[2], t}; }
};

struct FourVector {
  std::array<Complex, 4> c{};

  constexpr Complex& operator[](std::size_t i) { return c[i]; }
  constexpr const Complex& operator[](std::size_t i) const { return c[i]; }

  FourVector& operator+=(const FourVector& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  FourVector& operator-=(const FourVector& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  FourVector& operator*=(Complex s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  bool finite() const;
};

inline FourVector operator+(FourVector a, const FourVector& b) { return a += b; }
inline FourVector operator-(FourVector a, const FourVector& b) { return a -= b; }
inline FourVector operator*(Complex s, FourVector a) { return a *= s; }
inline FourVector operator*(FourVector a, Complex s) { return a *= s; }
inline FourVector operator/(FourVector a, Complex s) { return a *= (1.0 / s); }

/// (x1, x2, x3, i c t)
FourVector complex_coords(const Event& e, double c);

/// Sum a_i b_i without conjugation.
Complex dot(const FourVector& a, const FourVector& b);

double max_norm(const FourVector& v);

class Matrix4 {
 public:
  constexpr Matrix4() = default;

  static Matrix4 identity();
  static Matrix4 diagonal(Complex d0, Complex d1, Complex d2, Complex d3);

  Complex& operator()(std::size_t i, std::size_t j) { return m_[i][j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }

  Matrix4& operator+=(const Matrix4& o);
  Matrix4& operator-=(const Matrix4& o);
  Matrix4& operator*=(Complex s);

  bool finite() const;

 private:
  std::array<std::array<Complex, 4>, 4> m_{};
};

inline Matrix4 operator+(Matrix4 a, const Matrix4& b) { return a += b; }
inline Matrix4 operator-(Matrix4 a, const Matrix4& b) { return a -= b; }
inline Matrix4 operator*(Complex s, Matrix4 a) { return a *= s; }
inline Matrix4 operator*(Matrix4 a, Complex s) { return a *= s; }
inline Matrix4 operator/(Matrix4 a, Complex s) { return a *= (1.0 / s); }

FourVector mat_apply(const Matrix4& a, const FourVector& x);
Matrix4 mat_mul(const Matrix4& a, const Matrix4& b);
Matrix4 transpose(const Matrix4& a);

inline FourVector operator*(const Matrix4& a, const FourVector& x) { return mat_apply(a, x); }
inline Matrix4 operator*(const Matrix4& a, const Matrix4& b) { return mat_mul(a, b); }

double max_norm(const Matrix4& a);

/// max |A + A^t|
double antisymmetry_defect(const Matrix4& a);

/// max-norm of A A^t - I is at most tol.
bool is_orthogonal(const Matrix4& a, double tol);

/// Builds the antisymmetric matrix from its upper triangle, mirroring with a
/// sign flip. Diagonal entries are zero.
Matrix4 antisymmetrize_from_upper(const Matrix4& a);

// 3-vector helpers used by the physics layers.
double norm(const Vec3& v);
double dot3(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& a);

// ---------------------------------------------------------------------------
// Finite differences over events.

namespace detail {

inline bool all_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline bool all_finite(double x) { return std::isfinite(x); }
inline bool all_finite(const FourVector& v) { return v.finite(); }
inline bool all_finite(const Matrix4& m) { return m.finite(); }

template <class F>
auto central_difference(const F& f, const Event& e, Axis axis, double h, double c) {
  // Spatial axes step by h; the time axis steps t by h/c so that the step in x4
  // has magnitude h. d/dx4 = (1/(ic)) d/dt.
  auto eval = [&f](const Event& ev) {
    if constexpr (std::is_arithmetic_v<std::decay_t<decltype(f(ev))>>) {
      return Complex(f(ev));
    } else {
      return f(ev);
    }
  };
  const bool time_axis = axis == Axis::x4;
  const double step = time_axis ? h / c : h;
  auto diff = eval(e.displaced(axis, step)) - eval(e.displaced(axis, -step));
  diff = diff * Complex(1.0 / (2.0 * step));
  if (time_axis) diff = diff * (1.0 / (kI * c));
  return diff;
}

}  // namespace detail

enum class Richardson : bool { off = false, on = true };

/// Central-difference partial derivative d f / d x^axis at `e`.
///
/// `f` maps an Event to a Complex, FourVector or Matrix4. With Richardson::on
/// the h and h/2 estimates are combined as (4 D(h/2) - D(h)) / 3.
/// Throws Error{Numerical} when the result is not finite.
template <class F>
auto partial_derivative(const F& f, const Event& e, Axis axis, double h, double c,
                        Richardson richardson = Richardson::off) {
  if (!(h > 0.0)) throw Error(ErrorKind::Domain, "partial_derivative: step h must be positive");
  auto d = detail::central_difference(f, e, axis, h, c);
  if (richardson == Richardson::on) {
    auto half = detail::central_difference(f, e, axis, 0.5 * h, c);
    d = (half * Complex(4.0) - d) * Complex(1.0 / 3.0);
  }
  if (!detail::all_finite(d)) {
    throw Error(ErrorKind::Numerical, "partial_derivative: non-finite result along axis " +
                                          std::to_string(static_cast<int>(axis) + 1));
  }
  return d;
}

}  // namespace unigrav
