#include <algorithm>
#include <random>

#include "unigrav/experiments.hpp"

namespace unigrav {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Vec3 direction() {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
      const Vec3 v{n(rng_), n(rng_), n(rng_)};
      const double len = norm(v);
      if (len > 1e-3) return (1.0 / len) * v;
    }
  }

 private:
  std::mt19937_64 rng_;
};

bool contains(const CatalogSpec& s, FieldKind kind) {
  if (s.kind == kind) return true;
  return std::any_of(s.children.begin(), s.children.end(), [kind](const CatalogSpec& c) { return contains(c, kind); });
}

bool has_imaginary_rotation(const CatalogSpec& s) {
  return contains(s, FieldKind::ImaginaryRotation);
}

bool has_mass_sector(const CatalogSpec& s) {
  return contains(s, FieldKind::PointMass) || contains(s, FieldKind::UniformGravity) ||
         contains(s, FieldKind::RotatingFrame) || contains(s, FieldKind::UniformMotion);
}

/// Halves source strengths of the static constituents.
CatalogSpec halved(CatalogSpec s) {
  s.mass *= 0.5;
  s.charge *= 0.5;
  s.accel = 0.5 * s.accel;
  for (auto& child : s.children) child = halved(child);
  return s;
}

bool has_static_source(const CatalogSpec& s) {
  if (s.mass != 0.0 || s.charge != 0.0 || norm(s.accel) != 0.0) return true;
  return std::any_of(s.children.begin(), s.children.end(), has_static_source);
}

double matrix_diff(const Matrix4& a, const Matrix4& b) { return max_norm(a - b); }

/// Running maximum of one property across samples.
struct Worst {
  double value = 0.0;
  void update(double v) { value = std::isfinite(v) ? std::max(value, v) : INFINITY; }
};

/// Ratio of two residuals; when both sit at the rounding floor there is nothing to scale.
double scaling_ratio(double full, double half, double floor) {
  if (full <= floor && half <= floor) return INFINITY;
  return half > 0.0 ? full / half : INFINITY;
}

}  // namespace

std::vector<CatalogSpec> default_catalog() {
  return {
      CatalogSpec::constant(1.0),
      CatalogSpec::point_mass(1e-3),
      CatalogSpec::point_charge(1e-5),
      CatalogSpec::rotating_frame(0.1),
      CatalogSpec::uniform_motion({0.3, -0.2, 0.1}),
      CatalogSpec::uniform_gravity({1e-3, -2e-3, 5e-4}),
      CatalogSpec::imaginary_rotation(0.05),
      CatalogSpec::product({CatalogSpec::point_mass(1e-3), CatalogSpec::point_charge(1e-5)}),
      CatalogSpec::product({CatalogSpec::point_mass(1e-3), CatalogSpec::rotating_frame(0.1)}),
  };
}

double linearization_min_ratio(int n_samples, std::uint64_t seed) {
  const auto k = PhysicalConstants::scaled();
  Sampler rng(seed ^ 0x9e3779b97f4a7c15ULL);
  double worst = INFINITY;
  for (int i = 0; i < n_samples; ++i) {
    const Vec3 a_dir = rng.direction();
    const double w_sign = rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    const Vec3 v_dir = rng.direction();
    const Event at{0.0, 0.0, rng.uniform(-1.0, 1.0), rng.uniform(0.0, 1.0)};

    // On the rotation axis u = 0, so the linear connection is defined there.
    auto residual = [&](double eps) {
      const CatalogSpec spec = CatalogSpec::product(
          {CatalogSpec::uniform_gravity(eps * a_dir), CatalogSpec::rotating_frame(w_sign * eps)});
      const PotentialField f = make_field(spec, k);
      const FourVector V = four_velocity(std::sqrt(eps) * v_dir, k.c);
      const FieldTensors t = compute_tensors(f, at, V);
      const LinearConnection g = linear_connection(extract_kinematics(f, at), k.c);
      return max_norm(t.S - g.contract(V));
    };
    const double eps = 1e-3;
    worst = std::min(worst, scaling_ratio(residual(eps), residual(0.5 * eps), 1e-300));
  }
  return worst;
}

Report invariant_suite(const std::vector<CatalogSpec>& fields, int n_samples, std::uint64_t seed,
                       const SuiteHooks& hooks) {
  if (n_samples < 1) throw Error(ErrorKind::Parameter, "invariant_suite: need at least one sample");
  const auto k = PhysicalConstants::scaled();
  Sampler rng(seed);

  Worst anti_Phi, anti_phi, anti_S, anti_Gamma, ortho_P;
  Worst gauge_Phi, gauge_phi, gauge_P, gauge_S;
  Worst roundtrip, norm_U, split, impulse_err, fv_norm;
  Worst maxwell_cyclic_frac, maxwell_div_frac;
  double ricci_ratio = INFINITY;

  for (const auto& spec : fields) {
    validate(spec);
    const PotentialField f = make_field(spec, k);
    const double C = 2.5;
    const PotentialField gauged = make_field(CatalogSpec::product({spec, CatalogSpec::constant(C)}), k);
    const bool imaginary_rotation = has_imaginary_rotation(spec);

    for (int i = 0; i < n_samples; ++i) {
      const double L = spec.length;
      const Event at = Event::at(rng.uniform(1.0, 3.0) * L * rng.direction(), rng.uniform(0.0, 1.0));
      const FourVector V = four_velocity(rng.uniform(0.0, 0.5) * k.c * rng.direction(), k.c);

      FieldTensors t = compute_tensors(f, at, V);
      if (hooks.corrupt_phi) {
        hooks.corrupt_phi(t.Phi);
        t.phi = compute_phi(t.Phi, t.U);
        t.S = compute_S(t.phi, t.P);
      }
      anti_Phi.update(antisymmetry_defect(t.Phi));
      anti_phi.update(antisymmetry_defect(t.phi));
      anti_S.update(antisymmetry_defect(t.S));
      ortho_P.update(max_norm(t.P * transpose(t.P) - Matrix4::identity()));

      const FieldTensors g = compute_tensors(gauged, at, V);
      gauge_Phi.update(matrix_diff(t.Phi, g.Phi));
      gauge_phi.update(matrix_diff(t.phi, g.phi));
      gauge_P.update(matrix_diff(t.P, g.P));
      gauge_S.update(matrix_diff(t.S, g.S));

      const FieldSample s = f.sample(at);
      if (norm(s.velocity()) <= 1e-12 * k.c) {
        const LinearConnection gamma = linear_connection(extract_kinematics(t.Phi, k), k.c);
        for (const auto& m : gamma.gamma) anti_Gamma.update(antisymmetry_defect(m));
      }

      if (!imaginary_rotation) {
        const PotentialDecomposition d = decompose_U(t.U, 1e-9, k.c);
        double err = std::max(std::abs(d.mu - s.mu.v) / s.mu.v, std::abs(d.nu_im - s.nu_im.v));
        err = std::max(err, norm(d.u - s.velocity()) / k.c);
        roundtrip.update(err);
        const Complex mn = s.mu_nu();
        norm_U.update(std::abs(dot(t.U, t.U) - mn * mn) / std::norm(mn));
      }

      if (!has_mass_sector(spec)) {
        const Matrix4 psi = split_Phi(t.Phi, k.lambda()).charge;
        const Matrix4 psi_a = em_tensor_from_potential(f, at, k.lambda());
        const double scale = std::max(max_norm(psi), 1e-300);
        split.update(max_norm(psi - psi_a) / scale);
      }

      // Maxwell-analog residuals measured against the second-order scale |Phi|^2.
      const double h = 1e-4 * L;
      const MaxwellResiduals mr = maxwell_residuals(f, at, h);
      const double scale2 = std::max(10.0 * std::pow(max_norm(t.Phi), 2), 1e-15);
      maxwell_cyclic_frac.update(mr.cyclic / scale2);
      maxwell_div_frac.update(max_norm(mr.divergence) / scale2);

      if (!spec.moving() && has_static_source(spec)) {
        const PotentialField half = make_field(halved(spec), k);
        const double full_res = vacuum_ricci_residual(f, at, h);
        const double half_res = vacuum_ricci_residual(half, at, h);
        ricci_ratio = std::min(ricci_ratio, scaling_ratio(full_res, half_res, 1e-18));
      }
    }
  }

  // Algebraic identities on field-independent random inputs.
  for (int i = 0; i < n_samples; ++i) {
    const Vec3 v = rng.uniform(0.0, 0.999) * k.c * rng.direction();
    fv_norm.update(std::abs(dot(four_velocity(v, k.c), four_velocity(v, k.c)) - 1.0));

    const double m = rng.uniform(0.1, 10.0), e = rng.uniform(-10.0, 10.0), lambda = rng.uniform(0.1, 10.0);
    const double c = rng.uniform(0.5, 5.0);
    const Vec3 A = rng.uniform(0.0, 10.0) * rng.direction();
    const Vec3 p = impulse(Particle{m, e, Complex(m, -e / lambda)}, v, A, lambda, c);
    double err = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      const double expected = m * v[j] - e * A[j] / c;
      err = std::max(err, std::abs(p[j] - expected) / std::max(1.0, std::abs(m * v[j]) + std::abs(e * A[j] / c)));
    }
    impulse_err.update(err);
  }

  // dot(V, V) drift over 1e4 steps on a near-circular orbit, charged particle.
  Worst drift_newtonian, drift_full;
  {
    const PotentialField f =
        make_field(CatalogSpec::product({CatalogSpec::point_mass(1e-3), CatalogSpec::point_charge(1e-4)}), k);
    const Particle p = make_particle(1.0, 0.5, k.lambda());
    const double gm_eff = 1e-3 - 0.5e-4;
    const double period = 2.0 * M_PI / std::sqrt(gm_eff);
    const ParticleState init{Event{1.0, 0.0, 0.0, 0.0}, four_velocity({0.0, std::sqrt(gm_eff), 0.0}, k.c)};
    for (auto [model, worst] : {std::pair{MotionModel::Newtonian, &drift_newtonian}, {MotionModel::Full, &drift_full}}) {
      const Trajectory tr = integrate(init, f, p, model, period / 1000.0, 10000, {false, 1e-6});
      for (const auto& smp : tr.samples) worst->update(smp.norm_drift);
    }
  }

  Report rep;
  rep.title = "invariant suite, " + std::to_string(fields.size()) + " fields x " + std::to_string(n_samples) +
              " samples, seed " + std::to_string(seed);
  rep.rows.push_back(upper_bound_row("antisymmetry.Phi", anti_Phi.value, 1e-12));
  rep.rows.push_back(upper_bound_row("antisymmetry.phi", anti_phi.value, 1e-12));
  rep.rows.push_back(upper_bound_row("antisymmetry.S", anti_S.value, 1e-12));
  rep.rows.push_back(upper_bound_row("antisymmetry.Gamma", anti_Gamma.value, 1e-12));
  rep.rows.push_back(upper_bound_row("orthogonality.P", ortho_P.value, 1e-12));
  rep.rows.push_back(upper_bound_row("gauge.Phi", gauge_Phi.value, 1e-12));
  rep.rows.push_back(upper_bound_row("gauge.phi", gauge_phi.value, 1e-12));
  rep.rows.push_back(upper_bound_row("gauge.P", gauge_P.value, 1e-12));
  rep.rows.push_back(upper_bound_row("gauge.S", gauge_S.value, 1e-12));
  rep.rows.push_back(upper_bound_row("roundtrip.decompose_U", roundtrip.value, 1e-12));
  rep.rows.push_back(upper_bound_row("norm.U", norm_U.value, 1e-12));
  rep.rows.push_back(lower_bound_row("linearization.scaling", linearization_min_ratio(std::min(n_samples, 20), seed), 3.5));
  rep.rows.push_back(upper_bound_row("maxwell.cyclic", maxwell_cyclic_frac.value, 1.0));
  rep.rows.push_back(upper_bound_row("maxwell.divergence", maxwell_div_frac.value, 1.0));
  rep.rows.push_back(lower_bound_row("ricci.scaling", ricci_ratio, 3.5));
  rep.rows.push_back(upper_bound_row("split.consistency", split.value, 1e-8));
  rep.rows.push_back(upper_bound_row("impulse.identity", impulse_err.value, 1e-13));
  rep.rows.push_back(upper_bound_row("four_velocity.norm", fv_norm.value, 1e-12));
  rep.rows.push_back(upper_bound_row("conservation.norm_drift.newtonian", drift_newtonian.value, 1e-10));
  rep.rows.push_back(upper_bound_row("conservation.norm_drift.full", drift_full.value, 1e-10));
  return rep;
}

}  // namespace unigrav
