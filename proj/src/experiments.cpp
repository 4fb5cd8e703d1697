#include "unigrav/experiments.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace unigrav {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

/// Slope and intercept of the least-squares line y = a + b x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

double wrap_angle(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

/// Asymptotic deflection of a flyby at speed beta (fraction of c), scaled units.
double flyby_deflection(double gm, double R, double beta, const DeflectionOptions& opts) {
  const auto k = PhysicalConstants::scaled();
  const PotentialField field = make_field(CatalogSpec::point_mass(gm * R), k);
  const Particle p = make_particle(1.0, 0.0, k.lambda());
  const double L = opts.start_distance * R;

  ParticleState s{Event{-L, R, 0.0, 0.0}, four_velocity({beta, 0.0, 0.0}, k.c)};
  const double lorentz = 1.0 / std::sqrt(1.0 - beta * beta);
  const double dtau = R / (opts.steps_per_impact * lorentz * beta);
  const long expected = static_cast<long>(2.0 * L / R * opts.steps_per_impact);
  const long max_steps = 4 * expected + 100;

  double r_min = R;
  long steps = 0;
  while (s.event.x1 < L) {
    if (++steps > max_steps) throw Error(ErrorKind::Parameter, "light_deflection: particle did not escape (captured)");
    s = step_rk4(s, field, p, opts.model, dtau);
    r_min = std::min(r_min, s.event.radius());
    if (r_min < 0.5 * R) throw Error(ErrorKind::Parameter, "light_deflection: trajectory captured, not a flyby");
  }
  const Vec3 v = three_velocity(s.V, k.c);
  return std::atan2(-v[1], v[0]);
}

}  // namespace

Report light_deflection(double gm_over_rc2, double impact_radius, const std::vector<double>& speeds,
                        const DeflectionOptions& opts) {
  if (!(gm_over_rc2 >= 0.0) || gm_over_rc2 > 1e-2)
    throw Error(ErrorKind::Parameter, "light_deflection: gm_over_rc2 must lie in [0, 1e-2] (weak field)");
  if (!(impact_radius > 0.0)) throw Error(ErrorKind::Parameter, "light_deflection: impact radius must be positive");
  if (speeds.empty()) throw Error(ErrorKind::Parameter, "light_deflection: no speeds given");
  for (double b : speeds)
    if (!(b > 0.0 && b < 1.0)) throw Error(ErrorKind::Parameter, "light_deflection: speeds must lie in (0, c)");

  Report rep;
  rep.title = "light deflection, gm/(Rc^2) = " + fmt(gm_over_rc2) + ", model " + to_string(opts.model);
  std::vector<double> xs, ys;
  for (double beta : speeds) {
    const double measured = flyby_deflection(gm_over_rc2, impact_radius, beta, opts);
    // massive-particle flyby: 2 gamma M (1 + v^2/c^2) / (R v^2)
    const double reference = 2.0 * gm_over_rc2 * (1.0 + beta * beta) / (beta * beta);
    rep.rows.push_back(compare_row("deflection_v=" + fmt(beta), measured, reference, 0.10));
    xs.push_back(1.0 - beta * beta);
    ys.push_back(measured);
  }
  if (speeds.size() >= 2) {
    const double extrapolated = fit_line(xs, ys).first;
    rep.rows.push_back(compare_row("deflection_extrapolated", extrapolated, 4.0 * gm_over_rc2, 0.02));
  }
  return rep;
}

double measure_perihelion_advance(double gm, double ecc, int n_orbits, MotionModel model, int steps_per_orbit) {
  const auto k = PhysicalConstants::scaled();
  const PotentialField field = make_field(CatalogSpec::point_mass(gm), k);
  const Particle p = make_particle(1.0, 0.0, k.lambda());

  const double a = 1.0;
  const double r_peri = a * (1.0 - ecc);
  const double v_peri = std::sqrt(gm * (1.0 + ecc) / r_peri);
  const double period = 2.0 * M_PI * std::sqrt(a * a * a / gm);
  const double dtau = period / steps_per_orbit;

  ParticleState s{Event{r_peri, 0.0, 0.0, 0.0}, four_velocity({0.0, v_peri, 0.0}, k.c)};

  // three-sample window of (r, unwrapped angle)
  double r_prev2 = 0.0, r_prev = s.event.radius();
  double th_prev2 = 0.0, th_prev = 0.0;
  double raw_prev = 0.0;
  std::vector<double> passages;
  const long max_steps = static_cast<long>(n_orbits + 2) * steps_per_orbit * 2;
  for (long i = 1; i <= max_steps && static_cast<int>(passages.size()) < n_orbits; ++i) {
    s = step_rk4(s, field, p, model, dtau);
    const double r = s.event.radius();
    const double raw = std::atan2(s.event.x2, s.event.x1);
    const double th = th_prev + wrap_angle(raw - raw_prev);
    raw_prev = raw;
    if (i >= 2 && r_prev < r_prev2 && r_prev <= r) {
      // vertex of the parabola through the three samples, in steps from the middle one
      const double curvature = r_prev2 - 2.0 * r_prev + r;
      const double d = curvature != 0.0 ? 0.5 * (r_prev2 - r) / curvature : 0.0;
      passages.push_back(th_prev + 0.5 * d * (th - th_prev2) + 0.5 * d * d * (th - 2.0 * th_prev + th_prev2));
    }
    r_prev2 = r_prev;
    r_prev = r;
    th_prev2 = th_prev;
    th_prev = th;
    if (!(r > 0.0) || r > 10.0 * a) throw Error(ErrorKind::Parameter, "perihelion_precession: orbit not bound");
  }
  if (passages.size() < 2) throw Error(ErrorKind::Parameter, "perihelion_precession: fewer than two perihelia found");
  std::vector<double> idx(passages.size());
  std::iota(idx.begin(), idx.end(), 0.0);
  return fit_line(idx, passages).second - 2.0 * M_PI;
}

Report perihelion_precession(double gm, double ecc, int n_orbits, const PerihelionOptions& opts) {
  if (!(ecc >= 0.0 && ecc < 1.0)) throw Error(ErrorKind::Parameter, "perihelion_precession: need 0 <= e < 1 (bound orbit)");
  if (!(gm > 0.0) || gm > 1e-2) throw Error(ErrorKind::Parameter, "perihelion_precession: gm_over_ac2 must lie in (0, 1e-2]");
  if (n_orbits < 2) throw Error(ErrorKind::Parameter, "perihelion_precession: need at least 2 orbits");
  if (opts.steps_per_orbit < 100) throw Error(ErrorKind::Parameter, "perihelion_precession: too few steps per orbit");

  const double reference = 6.0 * M_PI * gm / (1.0 - ecc * ecc);
  Report rep;
  rep.title = "perihelion precession, gm/(ac^2) = " + fmt(gm) + ", e = " + fmt(ecc) + ", " + std::to_string(n_orbits) +
              " orbits";
  const double advance = measure_perihelion_advance(gm, ecc, n_orbits, opts.model, opts.steps_per_orbit);
  if (opts.model == MotionModel::Newtonian) {
    rep.rows.push_back(upper_bound_row("perihelion_newtonian_fraction", std::abs(advance) / reference, 0.05));
  } else {
    rep.rows.push_back(compare_row(std::string("perihelion_advance_") + to_string(opts.model), advance, reference, 0.10));
  }
  if (opts.newtonian_control && opts.model != MotionModel::Newtonian) {
    const double control = measure_perihelion_advance(gm, ecc, n_orbits, MotionModel::Newtonian, opts.steps_per_orbit);
    rep.rows.push_back(upper_bound_row("perihelion_newtonian_fraction", std::abs(control) / reference, 0.05));
  }
  return rep;
}

Report rotating_frame_check(double omega, double r, const Vec3& v_in_frame) {
  const auto k = PhysicalConstants::scaled();
  if (!(std::abs(omega) * r + norm(v_in_frame) < k.c))
    throw Error(ErrorKind::Parameter, "rotating_frame_check: need |omega| r + |v| < c");
  const PotentialField field = make_field(CatalogSpec::rotating_frame(omega), k);
  const Particle p = make_particle(1.0, 0.0, k.lambda());
  const Event at{r, 0.0, 0.0, 0.0};
  const Vec3 w{0.0, 0.0, omega};
  const Vec3 pos{r, 0.0, 0.0};

  auto measured_at = [&](const Vec3& v) {
    const ParticleState s{at, four_velocity(v, k.c)};
    return coordinate_acceleration(s.V, acceleration(s, field, p, MotionModel::Newtonian), k.c);
  };
  auto vector_row = [](std::string name, const Vec3& m, const Vec3& ref, double tol) {
    ReportRow row{std::move(name), norm(m), norm(ref), 0.0, false};
    const double err = norm(m - ref);
    row.rel_error = norm(ref) > 0.0 ? err / norm(ref) : err;
    row.pass = norm(ref) > 0.0 ? row.rel_error <= tol : err <= 1e-15;
    return row;
  };

  const Vec3 centrifugal = -1.0 * cross(w, cross(w, pos));
  const Vec3 coriolis = -2.0 * cross(w, v_in_frame);
  const Vec3 a_rest = measured_at({0.0, 0.0, 0.0});
  const Vec3 a_moving = measured_at(v_in_frame);

  Report rep;
  rep.title = "rotating frame, omega = " + fmt(omega) + ", r = " + fmt(r);
  rep.rows.push_back(vector_row("rotating_frame.centrifugal", a_rest, centrifugal, 1e-8));
  if (norm(v_in_frame) > 0.0) rep.rows.push_back(vector_row("rotating_frame.coriolis", a_moving - a_rest, coriolis, 1e-8));
  rep.rows.push_back(vector_row("rotating_frame.total", a_moving, centrifugal + coriolis, 1e-8));
  return rep;
}

Report coulomb_newton_lambda(const PhysicalConstants& k) {
  Report rep;
  rep.title = "lambda and the Newton/Coulomb pair forces";
  // independent route: lambda^2 = gamma / k_e with Coulomb constant k_e = 1/(4 pi eps0)
  const double coulomb_constant = 1.0 / (4.0 * M_PI * k.eps0);
  rep.rows.push_back(compare_row("lambda", k.lambda(), std::sqrt(k.gamma / coulomb_constant), 1e-12));

  // Weak sources: the 1/mu and 1/nu prefactors deviate from 1 by gamma m/(r c^2) and |nuIm|.
  const bool si = k.c > 1.0e3;
  const double m1 = si ? 1.0 : 1e-8, m2 = si ? 2.0 : 2e-8;
  const double e1 = si ? 1e-6 : 1e-8, e2 = si ? 3e-6 : 3e-8;
  const double r = 1.0;
  const Event at{r, 0.0, 0.0, 0.0};
  const FourVector rest = four_velocity({0.0, 0.0, 0.0}, k.c);

  {
    const PotentialField field = make_field(CatalogSpec::point_mass(m1), k);
    const Particle p = make_particle(m2, 0.0, k.lambda());
    const Vec3 f = measured_force(force_tensor(p, compute_Phi(field, at), k.lambda()), rest, k.c);
    rep.rows.push_back(compare_row("newton_force", norm(f), k.gamma * m1 * m2 / (r * r), 1e-6));
    rep.rows.push_back(compare_row("newton_force_attractive", f[0] < 0.0 ? 1.0 : 0.0, 1.0, 0.0));
  }
  {
    const PotentialField field = make_field(CatalogSpec::point_charge(e1), k);
    const Particle p = make_particle(m2, e2, k.lambda());
    const Vec3 f = measured_force(force_tensor(p, compute_Phi(field, at), k.lambda()), rest, k.c);
    rep.rows.push_back(compare_row("coulomb_force", norm(f), coulomb_constant * e1 * e2 / (r * r), 1e-6));
    rep.rows.push_back(compare_row("coulomb_force_repulsive", f[0] > 0.0 ? 1.0 : 0.0, 1.0, 0.0));
  }
  return rep;
}

Report cyclotron_check(double e, double m, double big_omega, double v0, const CyclotronOptions& opts) {
  const auto k = PhysicalConstants::scaled();
  if (!(v0 > 0.0) || v0 / k.c > 0.01)
    throw Error(ErrorKind::Parameter, "cyclotron_check: relativistic regime unsupported (need 0 < v0/c <= 0.01)");
  if (!(m > 0.0)) throw Error(ErrorKind::Parameter, "cyclotron_check: mass must be positive");
  const PotentialField field = make_field(CatalogSpec::imaginary_rotation(big_omega), k);
  const Particle p = make_particle(m, e, k.lambda());
  const double H3 = -2.0 * k.c * big_omega / k.lambda();

  Report rep;
  rep.title = "cyclotron, e = " + fmt(e) + ", m = " + fmt(m) + ", Omega = " + fmt(big_omega) + ", v0 = " + fmt(v0);
  ParticleState s{Event{0.0, 0.0, 0.0, 0.0}, four_velocity({v0, 0.0, 0.0}, k.c)};

  if (e == 0.0 || H3 == 0.0) {
    const double dtau = 1.0 / 1000.0;
    double deviation = 0.0;
    for (int i = 0; i < 1000; ++i) {
      s = step_rk4(s, field, p, MotionModel::Newtonian, dtau);
      deviation = std::max(deviation, std::hypot(s.event.x2, s.event.x3));
    }
    rep.rows.push_back(compare_row("cyclotron_straight_line", deviation, 0.0, 0.0, 1e-15));
    return rep;
  }

  const double omega_ref = e * H3 / (m * k.c);  // signed, about +x3
  const double radius_ref = m * v0 * k.c / std::abs(e * H3);
  const double period = 2.0 * M_PI / std::abs(omega_ref);
  const int n = static_cast<int>(opts.steps_per_period * opts.periods);
  const double dtau = period * opts.periods / n;

  std::vector<double> ts, angles, xs, ys;
  double raw_prev = 0.0, th = 0.0;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) s = step_rk4(s, field, p, MotionModel::Newtonian, dtau);
    const Vec3 v = three_velocity(s.V, k.c);
    const double raw = std::atan2(v[1], v[0]);
    th += i > 0 ? wrap_angle(raw - raw_prev) : raw;
    raw_prev = raw;
    ts.push_back(s.event.t);
    angles.push_back(th);
    xs.push_back(s.event.x1);
    ys.push_back(s.event.x2);
  }
  const double omega_measured = fit_line(ts, angles).second;

  // Algebraic circle fit: x^2 + y^2 + D x + E y + F = 0 (least squares, normal equations).
  double S[3][4] = {};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double row[3] = {xs[i], ys[i], 1.0};
    const double rhs = -(xs[i] * xs[i] + ys[i] * ys[i]);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) S[a][b] += row[a] * row[b];
      S[a][3] += row[a] * rhs;
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(S[r][col]) > std::abs(S[piv][col])) piv = r;
    for (int j = 0; j < 4; ++j) std::swap(S[col][j], S[piv][j]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = S[r][col] / S[col][col];
      for (int j = 0; j < 4; ++j) S[r][j] -= f * S[col][j];
    }
  }
  const double D = S[0][3] / S[0][0], E = S[1][3] / S[1][1], F = S[2][3] / S[2][2];
  const double radius_measured = std::sqrt(0.25 * (D * D + E * E) - F);

  rep.rows.push_back(compare_row("cyclotron_frequency", omega_measured, omega_ref, 1e-4));
  rep.rows.push_back(compare_row("cyclotron_radius", radius_measured, radius_ref, 1e-4));
  return rep;
}

}  // namespace unigrav
