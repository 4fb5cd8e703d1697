#pragma once

// Test-particle motion. The state is advanced in real proper time tau; the
// classical path parameter s satisfies ds = i c dtau, so every dV/ds is turned
// into dV/dtau = i c dV/ds.

#include <vector>

#include "unigrav/field_tensors.hpp"
#include "unigrav/fields.hpp"

namespace unigrav {

/// Mass m, charge e and complex mass M = m - i e / lambda.
struct Particle {
  double m = 1.0;
  double e = 0.0;
  Complex M{1.0, 0.0};
};

Particle make_particle(double m, double e, double lambda);

struct ParticleState {
  Event event;
  FourVector V;  // 4-velocity, dot(V,V) = 1
};

enum class MotionModel { Newtonian, Linear, Full };

const char* to_string(MotionModel m);
MotionModel parse_motion_model(const std::string& name);

struct TrajectorySample {
  double tau = 0.0;
  ParticleState state;
  double norm_drift = 0.0;       // |dot(V,V) - 1|
  double audited_energy = 0.0;   // V4 - effective log-potential; constant in static u = 0 fields
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
};

FourVector four_velocity(const Vec3& v, double c);
Vec3 three_velocity(const FourVector& V, double c, double tol = 1e-9);

/// m Fgrav + e Psi: the measured part of M Phi.
Matrix4 force_tensor(const Particle& p, const Matrix4& phi_field, double lambda);

/// Proper-time force on a particle, f_k = m d(gamma v_k)/dtau, from a force
/// tensor and the particle's 4-velocity.
Vec3 measured_force(const Matrix4& force, const FourVector& V, double c);

/// dV/dtau under the selected motion model.
FourVector acceleration(const ParticleState& state, const PotentialField& f, const Particle& p, MotionModel model);

/// Coordinate 3-acceleration dv/dt implied by V and dV/dtau.
Vec3 coordinate_acceleration(const FourVector& V, const FourVector& dV_dtau, double c);

ParticleState step_rk4(const ParticleState& state, const PotentialField& f, const Particle& p, MotionModel model,
                       double dtau);

struct IntegrateOptions {
  bool renormalize = false;
  double norm_bound = 1e-6;
};

/// nSteps RK4 steps; the trajectory holds the initial sample plus one sample per step.
Trajectory integrate(const ParticleState& init, const PotentialField& f, const Particle& p, MotionModel model,
                     double dtau, int n_steps, const IntegrateOptions& opts = {});

/// Static-field energy audit V4 - [Re ln(mu nu) + (e/(m lambda)) Im ln(mu nu)].
double audited_energy(const ParticleState& state, const PotentialField& f, const Particle& p);

/// Re[(m - i e/lambda)(v - i lambda A / c)] = m v - e A / c.
Vec3 impulse(const Particle& p, const Vec3& v, const Vec3& A, double lambda, double c);

}  // namespace unigrav
