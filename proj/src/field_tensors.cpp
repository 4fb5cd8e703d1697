#include "unigrav/field_tensors.hpp"

#include <algorithm>
#include <sstream>

namespace unigrav {

namespace {

Matrix4 antisymmetric_part_of_jacobian(const Matrix4& jac) {
  // entry (p, q) = dU_p/dx^q - dU_q/dx^p
  Matrix4 upper;
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = p + 1; q < 4; ++q) upper(p, q) = jac(p, q) - jac(q, p);
  return antisymmetrize_from_upper(upper);
}

constexpr bool is_time(std::size_t i) { return i == 3; }

}  // namespace

Matrix4 compute_Phi(const PotentialField& f, const Event& e, const DiffOptions& opts) {
  const PotentialJacobian pj = potential_jacobian(f, e, opts);
  if (pj.mu_nu == Complex(0.0)) throw Error(ErrorKind::Singularity, "compute_Phi: mu*nu = 0");
  return antisymmetric_part_of_jacobian(pj.jacobian) / pj.mu_nu;
}

PhiSplit split_Phi(const Matrix4& phi_field, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::Domain, "split_Phi: lambda must be positive");
  Matrix4 grav;
  Matrix4 charge;
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t q = p + 1; q < 4; ++q) {
      const Complex z = phi_field(p, q);
      if (is_time(q)) {
        // gravity sector real, charge sector i*lambda*real
        grav(p, q) = z.real();
        charge(p, q) = z.imag() / lambda;
      } else {
        // gravity sector i*real, charge sector real = i*lambda*(-i*real/lambda)
        grav(p, q) = kI * z.imag();
        charge(p, q) = -kI * z.real() / lambda;
      }
    }
  }
  return {antisymmetrize_from_upper(grav), antisymmetrize_from_upper(charge)};
}

Kinematics extract_kinematics(const Matrix4& phi_field, const PhysicalConstants& k) {
  const double c = k.c;
  const double c2 = c * c;
  Kinematics out;
  for (std::size_t i = 0; i < 3; ++i) out.a[i] = c2 * phi_field(3, i);
  const Complex half = c / (2.0 * kI);
  out.w[0] = half * phi_field(2, 1);
  out.w[1] = half * phi_field(0, 2);
  out.w[2] = half * phi_field(1, 0);

  const Matrix4 psi = split_Phi(phi_field, k.lambda()).charge;
  for (std::size_t i = 0; i < 3; ++i) out.E[i] = (c2 * psi(i, 3)).real();
  out.H[0] = (-kI * c2 * psi(1, 2)).real();
  out.H[1] = (-kI * c2 * psi(2, 0)).real();
  out.H[2] = (-kI * c2 * psi(0, 1)).real();
  return out;
}

Kinematics extract_kinematics(const PotentialField& f, const Event& e, const DiffOptions& opts) {
  const FieldSample s = f.sample(e);
  const double c = f.constants().c;
  if (norm(s.velocity()) > 1e-12 * c) {
    std::ostringstream os;
    os.precision(17);
    os << "extract_kinematics: source velocity |u| = " << norm(s.velocity())
       << " != 0 at the point; kinematics are defined only in the u = 0 frame";
    throw Error(ErrorKind::Frame, os.str());
  }
  return extract_kinematics(compute_Phi(f, e, opts), f.constants());
}

Matrix4 field_tensor_from_kinematics(const CVec3& a, const CVec3& w, double c) {
  Matrix4 upper;
  const Complex rot = 2.0 * kI / c;
  upper(0, 1) = -rot * w[2];
  upper(0, 2) = rot * w[1];
  upper(1, 2) = -rot * w[0];
  for (std::size_t i = 0; i < 3; ++i) upper(i, 3) = -a[i] / (c * c);
  return antisymmetrize_from_upper(upper);
}

Matrix4 compute_P(const FourVector& U, const FourVector& V) {
  const Complex vv = dot(V, V);
  if (std::abs(vv - 1.0) > 1e-10) {
    std::ostringstream os;
    os.precision(17);
    os << "compute_P: V is not unit, dot(V,V) = " << vv;
    throw Error(ErrorKind::Domain, os.str());
  }
  const Complex mu = std::sqrt(dot(U, U));
  if (mu == Complex(0.0)) throw Error(ErrorKind::Singularity, "compute_P: dot(U,U) = 0");
  const Complex denom = mu + dot(U, V);
  if (std::abs(denom) <= 1e-14 * std::abs(mu)) {
    std::ostringstream os;
    os.precision(17);
    os << "compute_P: singular projector, mu + U.V = " << denom << " (mu = " << mu << ", U.V = " << dot(U, V)
       << ")";
    throw Error(ErrorKind::Singularity, os.str());
  }
  Matrix4 P;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex sym = mu * V[i] * V[j] + V[i] * U[j] + U[i] * V[j] + U[i] * U[j] / mu;
      P(i, j) = (i == j ? 1.0 : 0.0) - sym / denom + 2.0 / mu * U[j] * V[i];
    }
  }
  return P;
}

Matrix4 compute_phi(const Matrix4& phi_field, const FourVector& U) {
  const Complex mu2 = dot(U, U);
  if (mu2 == Complex(0.0)) throw Error(ErrorKind::Singularity, "compute_phi: dot(U,U) = 0 (degenerate)");
  const FourVector W = mat_apply(phi_field, U);  // W_j = Phi_jk U_k
  Matrix4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out(i, j) = 0.5 * phi_field(i, j) - 0.5 * (U[i] * W[j] - U[j] * W[i]) / mu2;
  return out;
}

Matrix4 compute_S(const Matrix4& phi, const Matrix4& P) { return -1.0 * mat_mul(transpose(P), mat_mul(phi, P)); }

Matrix4 LinearConnection::contract(const FourVector& V) const {
  Matrix4 out;
  for (std::size_t s = 0; s < 4; ++s) out += gamma[s] * V[s];
  return out;
}

LinearConnection linear_connection(const Kinematics& k, double c) {
  const Complex A1 = k.a[0] / (c * c), A2 = k.a[1] / (c * c), A3 = k.a[2] / (c * c);
  const Complex W1 = kI * k.w[0] / c, W2 = kI * k.w[1] / c, W3 = kI * k.w[2] / c;
  const Complex z = 0.0;
  auto make = [](std::array<std::array<Complex, 4>, 4> rows) {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = rows[i][j];
    return m;
  };
  LinearConnection g;
  g.gamma[0] = make({{{z, A2, A3, z}, {-A2, z, z, -W3}, {-A3, z, z, W2}, {z, W3, -W2, z}}});
  g.gamma[1] = make({{{z, -A1, z, W3}, {A1, z, A3, z}, {z, -A3, z, -W1}, {-W3, z, W1, z}}});
  g.gamma[2] = make({{{z, z, -A1, -W2}, {z, z, -A2, W1}, {A1, A2, z, z}, {W2, -W1, z, z}}});
  g.gamma[3] = make({{{z, W3, -W2, A1}, {-W3, z, W1, A2}, {W2, -W1, z, A3}, {-A1, -A2, -A3, z}}});
  return g;
}

namespace {

std::array<CJet, 4> em_potential_jets(const FieldSample& s, double c, double lambda) {
  const CJet mu = to_complex(s.mu);
  const CJet im_nu = to_complex(s.nu_im);
  RJet speed2 = s.u[0] * s.u[0] + s.u[1] * s.u[1] + s.u[2] * s.u[2];
  const CJet lorentz = to_complex(1.0 / sqrt(1.0 - speed2 / (c * c)));
  const CJet scale = mu * lorentz / Complex(lambda);
  // charge-phase part of U: nuIm u_real + u_imag in space, nuIm in time
  std::array<CJet, 4> A;
  for (std::size_t k = 0; k < 3; ++k)
    A[k] = (im_nu * to_complex(s.u[k]) + to_complex(s.u_imag[k])) * scale * (kI * c);
  A[3] = im_nu * scale * Complex(-c * c);
  return A;
}

}  // namespace

FourVector em_four_potential(const PotentialField& f, const Event& e, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::Domain, "em_four_potential: lambda must be positive");
  const double c = f.constants().c;
  const FieldSample s = f.sample(e);
  if (!(norm(s.velocity()) < c)) throw Error(ErrorKind::Domain, "em_four_potential: |u| >= c");
  const auto A = em_potential_jets(s, c, lambda);
  FourVector out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = A[i].v;
  return out;
}

Matrix4 em_tensor_from_potential(const PotentialField& f, const Event& e, double lambda) {
  const double c = f.constants().c;
  Matrix4 dA;  // dA(p, q) = dA_p / dx^q
  if (f.analytic()) {
    const FieldSample s = f.sample(e);
    if (!(norm(s.velocity()) < c)) throw Error(ErrorKind::Domain, "em_tensor_from_potential: |u| >= c");
    const auto A = em_potential_jets(s, c, lambda);
    const Complex inv_ic = 1.0 / (kI * c);
    for (std::size_t p = 0; p < 4; ++p) {
      for (std::size_t q = 0; q < 3; ++q) dA(p, q) = A[p].d[q];
      dA(p, 3) = A[p].d[3] * inv_ic;
    }
  } else {
    auto A_at = [&](const Event& ev) { return em_four_potential(f, ev, lambda); };
    const double h = 1e-6 * f.char_length();
    for (int q = 0; q < 4; ++q) {
      const FourVector col = partial_derivative(A_at, e, static_cast<Axis>(q), h, c);
      for (std::size_t p = 0; p < 4; ++p) dA(p, static_cast<std::size_t>(q)) = col[p];
    }
  }
  // Psi_pq = (1/c^2)(dA_q/dx^p - dA_p/dx^q)
  return antisymmetric_part_of_jacobian(transpose(dA)) / (c * c);
}

MaxwellResiduals maxwell_residuals(const PotentialField& f, const Event& e, double h) {
  const double c = f.constants().c;
  auto G = [&f](const Event& ev) { return antisymmetric_part_of_jacobian(potential_jacobian(f, ev).jacobian); };
  std::array<Matrix4, 4> d;
  for (int k = 0; k < 4; ++k) d[static_cast<std::size_t>(k)] = partial_derivative(G, e, static_cast<Axis>(k), h, c);

  MaxwellResiduals out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      for (std::size_t k = j + 1; k < 4; ++k)
        out.cyclic = std::max(out.cyclic, std::abs(d[k](i, j) + d[i](j, k) + d[j](k, i)));
  for (std::size_t i = 0; i < 4; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < 4; ++j) s += d[j](i, j);
    out.divergence[i] = s;
  }
  return out;
}

double vacuum_ricci_residual(const PotentialField& f, const Event& e, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::Domain, "vacuum_ricci_residual: h must be positive");
  const double c = f.constants().c;
  auto connection_at = [&f, c](const Event& ev) { return linear_connection(extract_kinematics(f, ev), c); };

  // dgamma[l][k](i, j) = d Gamma^i_{jk} / dx^l
  std::array<std::array<Matrix4, 4>, 4> dgamma;
  for (std::size_t l = 0; l < 4; ++l) {
    const Axis axis = static_cast<Axis>(l);
    const double step = is_time(l) ? h / c : h;
    const LinearConnection plus = connection_at(e.displaced(axis, step));
    const LinearConnection minus = connection_at(e.displaced(axis, -step));
    Complex scale = 1.0 / (2.0 * step);
    if (is_time(l)) scale /= kI * c;
    for (std::size_t k = 0; k < 4; ++k) dgamma[l][k] = (plus.gamma[k] - minus.gamma[k]) * scale;
  }
  const LinearConnection g = connection_at(e);
  auto G = [&g](std::size_t i, std::size_t j, std::size_t k) { return g.gamma[k](i, j); };
  auto dG = [&dgamma](std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return dgamma[l][k](i, j); };

  Matrix4 ricci;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t l = 0; l < 4; ++l) {
      Complex r = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        r += dG(k, j, l, k) - dG(k, j, k, l);
        for (std::size_t m = 0; m < 4; ++m) r += G(k, m, k) * G(m, j, l) - G(k, m, l) * G(m, j, k);
      }
      ricci(j, l) = r;
    }
  }
  Complex scalar = 0.0;
  for (std::size_t j = 0; j < 4; ++j) scalar += ricci(j, j);
  return max_norm(ricci - Matrix4::identity() * (0.5 * scalar));
}

FieldTensors compute_tensors(const PotentialField& f, const Event& e, const FourVector& V, const DiffOptions& opts) {
  FieldTensors t;
  t.U = evaluate_U(f, e);
  t.Phi = compute_Phi(f, e, opts);
  t.phi = compute_phi(t.Phi, t.U);
  t.P = compute_P(t.U, V);
  t.S = compute_S(t.phi, t.P);
  return t;
}

}  // namespace unigrav
