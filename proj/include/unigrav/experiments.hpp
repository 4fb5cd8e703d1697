#pragma once

// Reproducible desk-scale experiments. Each returns a Report whose reference
// values come from closed-form formulas evaluated at run time.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "unigrav/dynamics.hpp"
#include "unigrav/fields.hpp"

namespace unigrav {

/// One `name,measured,reference,rel_error,pass` line.
///
/// For comparisons against a reference value rel_error = |measured - reference| / |reference|
/// (absolute when the reference is 0). For property bounds, reference holds the
/// bound and rel_error the fraction of the bound used, so pass <=> rel_error <= 1.
struct ReportRow {
  std::string name;
  double measured = 0.0;
  double reference = 0.0;
  double rel_error = 0.0;
  bool pass = false;
};

struct Report {
  std::string title;
  std::vector<ReportRow> rows;

  bool all_pass() const;
  const ReportRow* find(const std::string& name) const;
};

/// Compare `measured` to `reference` with a relative tolerance (absolute
/// tolerance `abs_tol` when the reference is zero).
ReportRow compare_row(std::string name, double measured, double reference, double rel_tol, double abs_tol = 1e-12);
/// measured <= bound
ReportRow upper_bound_row(std::string name, double measured, double bound);
/// measured >= bound
ReportRow lower_bound_row(std::string name, double measured, double bound);

/// Header line plus one CSV row per check, numbers with 17 significant digits.
std::string to_csv(const Report& r);
/// Human-readable PASS/FAIL lines.
std::string to_text(const Report& r);

// ---------------------------------------------------------------------------

struct DeflectionOptions {
  MotionModel model = MotionModel::Full;
  double start_distance = 1000.0;   // in impact radii, on each side
  double steps_per_impact = 50.0;   // integration steps per impact radius of path
};

/// Flyby of a point mass at the given fractions of c; the asymptotic
/// deflections are extrapolated linearly in (1 - v^2/c^2) to v = c and
/// compared with 4 gamma M / (R c^2). Scaled units.
Report light_deflection(double gm_over_rc2, double impact_radius, const std::vector<double>& speeds,
                        const DeflectionOptions& opts = {});

struct PerihelionOptions {
  MotionModel model = MotionModel::Full;
  int steps_per_orbit = 10000;
  bool newtonian_control = true;  // also run the Newtonian model on the same orbit
};

/// Perihelion advance per orbit versus 6 pi gamma M / (a (1 - e^2) c^2). Scaled units, a = 1.
Report perihelion_precession(double gm_over_ac2, double eccentricity, int n_orbits, const PerihelionOptions& opts = {});

/// Perihelion advance per orbit for one model (radians).
double measure_perihelion_advance(double gm_over_ac2, double eccentricity, int n_orbits, MotionModel model,
                                  int steps_per_orbit);

/// Accelerations from the Newtonian law in the rotating-frame field against
/// a' = -2 w x v' - w x (w x r). Scaled units; the particle sits at (r, 0, 0).
Report rotating_frame_check(double omega, double r, const Vec3& v_in_frame);

/// lambda from the constants and the Newton / Coulomb pair-force magnitudes.
Report coulomb_newton_lambda(const PhysicalConstants& constants);

struct CyclotronOptions {
  int steps_per_period = 4000;
  double periods = 1.0;
};

/// Charged particle in the imaginary-rotation field against the Lorentz
/// circle: signed frequency e H3 / (m c) and radius m v0 c / (|e| |H|). Scaled units.
Report cyclotron_check(double e, double m, double big_omega, double v0, const CyclotronOptions& opts = {});

/// Test hooks for the invariant suite.
struct SuiteHooks {
  /// Applied to every Phi before the algebraic checks.
  std::function<void(Matrix4&)> corrupt_phi;
};

/// The catalog exercised by `unigrav check` when no fields are given.
std::vector<CatalogSpec> default_catalog();

/// Seeded randomized verification of the tensor identities, gauge invariance,
/// linearization and residual scaling, impulse identity and norm conservation.
Report invariant_suite(const std::vector<CatalogSpec>& fields, int n_samples, std::uint64_t seed,
                       const SuiteHooks& hooks = {});

/// max over samples of |S - sum_s Gamma_s V_s| at field strength eps and
/// eps/2, with v^2/c^2 tied to eps; returns the smallest reduction ratio.
double linearization_min_ratio(int n_samples, std::uint64_t seed);

}  // namespace unigrav
