#include "unigrav/dynamics.hpp"

#include <sstream>

namespace unigrav {

namespace {

std::string where(double tau, const Event& e) {
  std::ostringstream os;
  os.precision(17);
  os << "tau=" << tau << " event=(" << e.x1 << ", " << e.x2 << ", " << e.x3 << ", t=" << e.t << ")";
  return os.str();
}

struct Derivative {
  Vec3 dx;
  double dt;
  FourVector dV;
};

Derivative derivative(const ParticleState& s, const PotentialField& f, const Particle& p, MotionModel model) {
  const double c = f.constants().c;
  Derivative d;
  for (std::size_t k = 0; k < 3; ++k) d.dx[k] = (kI * c * s.V[k]).real();
  d.dt = s.V[3].real();
  d.dV = acceleration(s, f, p, model);
  return d;
}

ParticleState advance(const ParticleState& s, const Derivative& d, double h) {
  ParticleState out = s;
  out.event.x1 += h * d.dx[0];
  out.event.x2 += h * d.dx[1];
  out.event.x3 += h * d.dx[2];
  out.event.t += h * d.dt;
  out.V += d.dV * Complex(h);
  return out;
}

}  // namespace

Particle make_particle(double m, double e, double lambda) {
  if (!(m > 0.0) || !std::isfinite(m)) throw Error(ErrorKind::Domain, "particle mass must be positive");
  if (!std::isfinite(e)) throw Error(ErrorKind::Domain, "particle charge must be finite");
  if (!(lambda > 0.0)) throw Error(ErrorKind::Domain, "lambda must be positive");
  return {m, e, Complex(m, -e / lambda)};
}

const char* to_string(MotionModel m) {
  switch (m) {
    case MotionModel::Newtonian: return "newtonian";
    case MotionModel::Linear: return "linear";
    case MotionModel::Full: return "full";
  }
  return "?";
}

MotionModel parse_motion_model(const std::string& name) {
  for (auto m : {MotionModel::Newtonian, MotionModel::Linear, MotionModel::Full})
    if (name == to_string(m)) return m;
  throw Error(ErrorKind::Config, "unknown motion model '" + name + "' (expected newtonian|linear|full)");
}

FourVector four_velocity(const Vec3& v, double c) {
  const double beta2 = dot3(v, v) / (c * c);
  if (!(beta2 < 1.0)) throw Error(ErrorKind::Domain, "four_velocity: |v| >= c");
  const double g = 1.0 / std::sqrt(1.0 - beta2);
  const Complex inv_ic = 1.0 / (kI * c);
  return FourVector{{v[0] * g * inv_ic, v[1] * g * inv_ic, v[2] * g * inv_ic, Complex(g)}};
}

Vec3 three_velocity(const FourVector& V, double c, double tol) {
  if (V[3] == Complex(0.0)) throw Error(ErrorKind::Singularity, "three_velocity: V4 = 0");
  Vec3 v{};
  for (std::size_t k = 0; k < 3; ++k) {
    const Complex r = kI * V[k] / V[3];
    if (std::abs(r.imag()) > tol)
      throw Error(ErrorKind::Domain, "three_velocity: i*V" + std::to_string(k + 1) + "/V4 is not real");
    v[k] = c * r.real();
  }
  if (!(norm(v) < c)) throw Error(ErrorKind::Domain, "three_velocity: |v| >= c");
  return v;
}

Matrix4 force_tensor(const Particle& p, const Matrix4& phi_field, double lambda) {
  const PhiSplit split = split_Phi(phi_field, lambda);
  return split.gravity * Complex(p.m) + split.charge * Complex(p.e);
}

Vec3 measured_force(const Matrix4& force, const FourVector& V, double c) {
  const FourVector fv = mat_apply(force, V);
  return {(-c * c * fv[0]).real(), (-c * c * fv[1]).real(), (-c * c * fv[2]).real()};
}

FourVector acceleration(const ParticleState& state, const PotentialField& f, const Particle& p, MotionModel model) {
  const PhysicalConstants& k = f.constants();
  const double c = k.c;
  const Matrix4 Phi = compute_Phi(f, state.event);
  // Per-unit-mass generator: Fgrav + (e/m) Psi.
  const Matrix4 generator = force_tensor(p, Phi, k.lambda()) / Complex(p.m);

  FourVector dV_ds;
  switch (model) {
    case MotionModel::Newtonian: dV_ds = mat_apply(generator, state.V); break;
    case MotionModel::Linear: {
      if (norm(f.sample(state.event).velocity()) > 1e-12 * c)
        throw Error(ErrorKind::Frame, "linear model requires u = 0 at the particle position");
      const LinearConnection gamma = linear_connection(extract_kinematics(generator, k), c);
      dV_ds = -1.0 * mat_apply(gamma.contract(state.V), state.V);
      break;
    }
    case MotionModel::Full: {
      const FourVector U = evaluate_U(f, state.event);
      // P depends only on the direction of V; RK4 stages are slightly off the unit shell.
      const FourVector unit = state.V / std::sqrt(dot(state.V, state.V));
      const Matrix4 S = compute_S(compute_phi(generator, U), compute_P(U, unit));
      dV_ds = -1.0 * mat_apply(S, state.V);
      break;
    }
  }
  return dV_ds * (kI * c);
}

Vec3 coordinate_acceleration(const FourVector& V, const FourVector& dV_dtau, double c) {
  // v_k = c Re(i V_k / V4), dt/dtau = V4
  Vec3 a{};
  const Complex v4 = V[3];
  for (std::size_t k = 0; k < 3; ++k) {
    const Complex dv_dtau = c * kI * (dV_dtau[k] * v4 - V[k] * dV_dtau[3]) / (v4 * v4);
    a[k] = (dv_dtau / v4).real();
  }
  return a;
}

ParticleState step_rk4(const ParticleState& s, const PotentialField& f, const Particle& p, MotionModel model,
                       double dtau) {
  const Derivative k1 = derivative(s, f, p, model);
  const Derivative k2 = derivative(advance(s, k1, 0.5 * dtau), f, p, model);
  const Derivative k3 = derivative(advance(s, k2, 0.5 * dtau), f, p, model);
  const Derivative k4 = derivative(advance(s, k3, dtau), f, p, model);
  Derivative sum;
  for (std::size_t i = 0; i < 3; ++i) sum.dx[i] = k1.dx[i] + 2.0 * k2.dx[i] + 2.0 * k3.dx[i] + k4.dx[i];
  sum.dt = k1.dt + 2.0 * k2.dt + 2.0 * k3.dt + k4.dt;
  sum.dV = k1.dV + k2.dV * Complex(2.0) + k3.dV * Complex(2.0) + k4.dV;
  return advance(s, sum, dtau / 6.0);
}

double audited_energy(const ParticleState& state, const PotentialField& f, const Particle& p) {
  const FieldSample s = f.sample(state.event);
  const Complex log_potential = std::log(s.mu_nu());
  const double lambda = f.constants().lambda();
  return state.V[3].real() - (log_potential.real() + p.e / (p.m * lambda) * log_potential.imag());
}

Trajectory integrate(const ParticleState& init, const PotentialField& f, const Particle& p, MotionModel model,
                     double dtau, int n_steps, const IntegrateOptions& opts) {
  if (!(dtau > 0.0)) throw Error(ErrorKind::Domain, "integrate: dtau must be positive");
  if (n_steps < 1) throw Error(ErrorKind::Domain, "integrate: nSteps must be >= 1");

  Trajectory traj;
  traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);
  auto record = [&](double tau, const ParticleState& s) {
    const double drift = std::abs(dot(s.V, s.V) - 1.0);
    if (drift > opts.norm_bound) {
      std::ostringstream os;
      os.precision(17);
      os << "integrate: norm drift " << drift << " exceeds bound " << opts.norm_bound << " at " << where(tau, s.event);
      throw Error(ErrorKind::Numerical, os.str());
    }
    traj.samples.push_back({tau, s, drift, audited_energy(s, f, p)});
  };

  ParticleState s = init;
  record(0.0, s);
  for (int i = 1; i <= n_steps; ++i) {
    const double tau = dtau * i;
    try {
      s = step_rk4(s, f, p, model, dtau);
    } catch (const Error& err) {
      throw Error(err.kind(), std::string(err.what()) + " (integration aborted at " + where(tau, s.event) + ")");
    }
    if (opts.renormalize) s.V = s.V / std::sqrt(dot(s.V, s.V));
    record(tau, s);
  }
  return traj;
}

Vec3 impulse(const Particle& p, const Vec3& v, const Vec3& A, double lambda, double c) {
  const Complex M(p.m, -p.e / lambda);
  Vec3 out{};
  for (std::size_t k = 0; k < 3; ++k) out[k] = (M * Complex(v[k], -lambda * A[k] / c)).real();
  return out;
}

}  // namespace unigrav
