#include "unigrav/cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "unigrav/experiments.hpp"
#include "unigrav/scenario.hpp"

namespace unigrav {

using nlohmann::json;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Io:
    case ErrorKind::Composition:
    case ErrorKind::Parameter: return kExitUsage;
    default: return kExitFailure;
  }
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const FourVector& v) {
  json j = json::array();
  for (std::size_t i = 0; i < 4; ++i) j.push_back(to_json(v[i]));
  return j;
}

json to_json(const Matrix4& m) {
  json j = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < 4; ++k) row.push_back(to_json(m(i, k)));
    j.push_back(row);
  }
  return j;
}

json to_json(const CVec3& v) { return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }
json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

/// Emits `content` to the output path (atomically) or to `out` when no path is given.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty())
    out << content;
  else
    write_text_atomic(path, content);
}

struct Globals {
  std::string config;
  std::uint64_t seed = 0;
  std::string units = "scaled";
  bool units_given = false;
  std::string output;
};

Vec3 to_vec3(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3) throw Error(ErrorKind::Config, std::string(flag) + ": expected 3 comma-separated numbers");
  return {v[0], v[1], v[2]};
}

// --- field -----------------------------------------------------------------

struct FieldArgs {
  std::string kind;
  double M = 0.0, e = 0.0, omega = 0.0, Omega = 0.0, C = 1.0;
  std::vector<double> v, a, event, velocity;
};

int cmd_field(const Globals& g, const FieldArgs& fa, std::ostream& out) {
  Scenario s;
  if (!g.config.empty()) {
    s = load_scenario(g.config);
  } else {
    if (fa.kind.empty()) throw Error(ErrorKind::Config, "field: give --config or --kind");
    s.field.kind = parse_field_kind(fa.kind);
    if (s.field.kind == FieldKind::Product) throw Error(ErrorKind::Config, "field: products need --config");
    s.field.mass = fa.M;
    s.field.charge = fa.e;
    s.field.omega = fa.omega;
    s.field.big_omega = fa.Omega;
    s.field.scale = fa.C;
    if (!fa.v.empty()) s.field.velocity = to_vec3(fa.v, "--v");
    if (!fa.a.empty()) s.field.accel = to_vec3(fa.a, "--a");
  }
  if (g.units_given) s.units = parse_units(g.units);
  Event at = Event::at(s.position, 0.0);
  if (!fa.event.empty()) {
    if (fa.event.size() != 4) throw Error(ErrorKind::Config, "--event: expected x1,x2,x3,t");
    at = Event{fa.event[0], fa.event[1], fa.event[2], fa.event[3]};
  }
  const Vec3 v = fa.velocity.empty() ? s.velocity : to_vec3(fa.velocity, "--velocity");

  const PhysicalConstants k = s.constants();
  if (!(norm(v) < k.c)) throw Error(ErrorKind::Config, "--velocity: |v| must be < c");
  const PotentialField f = make_field(s.field, k);
  const FourVector V = four_velocity(v, k.c);
  const FieldTensors t = compute_tensors(f, at, V);
  const PhiSplit split = split_Phi(t.Phi, k.lambda());

  json j;
  j["units"] = to_string(s.units);
  j["field"] = field_to_json(s.field);
  j["event"] = json::array({at.x1, at.x2, at.x3, at.t});
  j["V"] = to_json(V);
  j["U"] = to_json(t.U);
  j["Phi"] = to_json(t.Phi);
  j["phi"] = to_json(t.phi);
  j["P"] = to_json(t.P);
  j["S"] = to_json(t.S);
  j["Fgrav"] = to_json(split.gravity);
  j["Psi"] = to_json(split.charge);
  if (norm(f.sample(at).velocity()) <= 1e-12 * k.c) {
    const Kinematics kin = extract_kinematics(t.Phi, k);
    j["a"] = to_json(kin.a);
    j["w"] = to_json(kin.w);
    j["E"] = to_json(kin.E);
    j["H"] = to_json(kin.H);
    const LinearConnection gamma = linear_connection(kin, k.c);
    j["Gamma"] = json::array();
    for (const auto& m : gamma.gamma) j["Gamma"].push_back(to_json(m));
  } else {
    // kinematic read-out and Gamma are defined only where the source is at rest
    for (const char* key : {"a", "w", "E", "H", "Gamma"}) j[key] = nullptr;
  }
  emit(g.output, j.dump(2) + "\n", out);
  return kExitOk;
}

// --- integrate ---------------------------------------------------------------

int cmd_integrate(const Globals& g, std::ostream& out) {
  if (g.config.empty()) throw Error(ErrorKind::Config, "integrate: --config is required");
  Scenario s = load_scenario(g.config);
  if (g.units_given) s.units = parse_units(g.units);
  const PhysicalConstants k = s.constants();
  const PotentialField f = make_field(s.field, k);
  const Particle p = make_particle(s.m, s.e, k.lambda());
  const ParticleState init{Event::at(s.position, 0.0), four_velocity(s.velocity, k.c)};
  const Trajectory tr = integrate(init, f, p, s.model, s.dtau, s.steps, s.integrate);
  emit(g.output.empty() ? s.output : g.output, trajectory_csv(tr, k.c), out);
  return kExitOk;
}

// --- experiment / check ------------------------------------------------------

int emit_report(const Globals& g, const Report& r, std::ostream& out) {
  out << to_text(r);
  if (!g.output.empty()) write_text_atomic(g.output, to_csv(r));
  return r.all_pass() ? kExitOk : kExitFailure;
}

std::vector<CatalogSpec> load_fields(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("malformed config: ") + e.what());
  }
  if (j.is_object()) {
    if (!j.contains("fields") || j.size() != 1) throw Error(ErrorKind::Config, "check config: expected {\"fields\": [...]}");
    j = j["fields"];
  }
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Config, "fields: expected a non-empty array");
  std::vector<CatalogSpec> fields;
  for (std::size_t i = 0; i < j.size(); ++i) {
    fields.push_back(parse_field(j[i], "fields[" + std::to_string(i) + "]"));
    validate(fields.back());
  }
  return fields;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"unigrav: unified-potential field tensors, test-particle dynamics and experiments", "unigrav"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "JSON config file");
  app.add_option("--seed", g.seed, "random seed for check");
  app.add_option("--units", g.units, "si or scaled")->each([&g](const std::string&) { g.units_given = true; });
  app.add_option("--output", g.output, "output path (CSV for reports and trajectories)");

  FieldArgs fa;
  auto* field = app.add_subcommand("field", "dump U, Phi, phi, P, S, Gamma, Psi and a/w/E/H at one event");
  field->add_option("--kind", fa.kind, "catalog field kind");
  field->add_option("--M", fa.M, "point mass");
  field->add_option("--e", fa.e, "point charge");
  field->add_option("--omega", fa.omega, "rotating-frame angular velocity");
  field->add_option("--Omega", fa.Omega, "imaginary-rotation angular velocity");
  field->add_option("--C", fa.C, "constant gauge factor");
  field->add_option("--v", fa.v, "uniform-motion velocity v1,v2,v3")->delimiter(',');
  field->add_option("--a", fa.a, "uniform-gravity acceleration a1,a2,a3")->delimiter(',');
  field->add_option("--event", fa.event, "event x1,x2,x3,t")->delimiter(',');
  field->add_option("--velocity", fa.velocity, "test-particle velocity v1,v2,v3 (for P and S)")->delimiter(',');

  auto* integ = app.add_subcommand("integrate", "integrate a scenario and write the trajectory CSV");

  auto* exp = app.add_subcommand("experiment", "run a named experiment and print its report");
  exp->require_subcommand(1);
  std::string model_name = "full";

  double d_gm = 1e-3, d_impact = 1.0, d_steps = 50.0;
  std::vector<double> d_speeds{0.99, 0.999, 0.9999};
  auto* defl = exp->add_subcommand("deflection", "light deflection by a point mass");
  defl->add_option("--gm", d_gm, "gamma M / (R c^2)");
  defl->add_option("--impact", d_impact, "impact radius R");
  defl->add_option("--speeds", d_speeds, "speeds as fractions of c")->delimiter(',');
  defl->add_option("--steps-per-impact", d_steps, "integration steps per impact radius");
  defl->add_option("--model", model_name, "newtonian, linear or full");

  double p_gm = 1e-3, p_ecc = 0.2;
  int p_orbits = 20, p_steps = 10000;
  auto* peri = exp->add_subcommand("perihelion", "perihelion advance of a bound orbit");
  peri->add_option("--gm", p_gm, "gamma M / (a c^2)");
  peri->add_option("--ecc", p_ecc, "eccentricity");
  peri->add_option("--orbits", p_orbits, "number of orbits");
  peri->add_option("--steps-per-orbit", p_steps, "RK4 steps per orbit");
  peri->add_option("--model", model_name, "newtonian, linear or full");

  double r_omega = 1e-5, r_r = 1.0;
  std::vector<double> r_v{0.0, 1e-5, 0.0};
  auto* rot = exp->add_subcommand("rotating", "centrifugal and Coriolis accelerations in a rotating frame");
  rot->add_option("--omega", r_omega, "angular velocity");
  rot->add_option("--r", r_r, "distance from the axis");
  rot->add_option("--v", r_v, "velocity in the frame v1,v2,v3")->delimiter(',');

  auto* coul = exp->add_subcommand("coulomb", "lambda and the Newton/Coulomb pair forces");

  double c_e = 1.0, c_m = 1.0, c_Omega = -0.5, c_v0 = 0.01;
  CyclotronOptions c_opts;
  auto* cyc = exp->add_subcommand("cyclotron", "charged particle in the imaginary-rotation field");
  cyc->add_option("--e", c_e, "particle charge");
  cyc->add_option("--m", c_m, "particle mass");
  cyc->add_option("--Omega", c_Omega, "imaginary angular velocity");
  cyc->add_option("--v0", c_v0, "initial speed");
  cyc->add_option("--steps-per-period", c_opts.steps_per_period, "RK4 steps per period");

  int samples = 100;
  auto* check = app.add_subcommand("check", "run the seeded invariant suite");
  check->add_option("--samples", samples, "samples per field");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "unigrav: usage error: " << msg << "\n";
    return kExitUsage;
  }

  try {
    if (g.units_given) parse_units(g.units);
    if (field->parsed()) return cmd_field(g, fa, out);
    if (integ->parsed()) return cmd_integrate(g, out);
    if (check->parsed()) {
      if (samples < 1) throw Error(ErrorKind::Config, "--samples: must be >= 1");
      const auto fields = g.config.empty() ? default_catalog() : load_fields(g.config);
      return emit_report(g, invariant_suite(fields, samples, g.seed), out);
    }
    if (!g.config.empty()) throw Error(ErrorKind::Config, "experiment: parameters are given as flags, not --config");
    const MotionModel model = parse_motion_model(model_name);
    if (defl->parsed()) {
      DeflectionOptions o;
      o.model = model;
      o.steps_per_impact = d_steps;
      return emit_report(g, light_deflection(d_gm, d_impact, d_speeds, o), out);
    }
    if (peri->parsed()) {
      PerihelionOptions o;
      o.model = model;
      o.steps_per_orbit = p_steps;
      return emit_report(g, perihelion_precession(p_gm, p_ecc, p_orbits, o), out);
    }
    if (rot->parsed()) return emit_report(g, rotating_frame_check(r_omega, r_r, to_vec3(r_v, "--v")), out);
    if (coul->parsed()) return emit_report(g, coulomb_newton_lambda(PhysicalConstants::for_units(parse_units(g.units))), out);
    if (cyc->parsed()) return emit_report(g, cyclotron_check(c_e, c_m, c_Omega, c_v0, c_opts), out);
    err << "unigrav: usage error: no command given\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "unigrav: " << to_string(e.kind()) << ": " << msg << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "unigrav: internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace unigrav
