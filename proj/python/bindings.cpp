#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unigrav/cli.hpp"
#include "unigrav/experiments.hpp"
#include "unigrav/scenario.hpp"

namespace py = pybind11;
using namespace unigrav;

namespace {

py::array_t<Complex> to_array(const Matrix4& m) {
  py::array_t<Complex> a({4, 4});
  auto r = a.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < 4; ++i)
    for (py::ssize_t j = 0; j < 4; ++j) r(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return a;
}

py::array_t<Complex> to_array(const FourVector& v) {
  py::array_t<Complex> a(4);
  auto r = a.mutable_unchecked<1>();
  for (py::ssize_t i = 0; i < 4; ++i) r(i) = v[static_cast<std::size_t>(i)];
  return a;
}

CatalogSpec field_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("malformed field: ") + e.what());
  }
  CatalogSpec spec = parse_field(j);
  validate(spec);
  return spec;
}

py::list rows(const Report& r) {
  py::list out;
  for (const auto& row : r.rows) {
    py::dict d;
    d["name"] = row.name;
    d["measured"] = row.measured;
    d["reference"] = row.reference;
    d["rel_error"] = row.rel_error;
    d["pass"] = row.pass;
    out.append(d);
  }
  return out;
}

py::dict tensors(const std::string& field, std::array<double, 4> event, std::array<double, 3> velocity,
                 const std::string& units) {
  const PhysicalConstants k = PhysicalConstants::for_units(parse_units(units));
  const PotentialField f = make_field(field_from_json(field), k);
  const Event at{event[0], event[1], event[2], event[3]};
  const FieldTensors t = compute_tensors(f, at, four_velocity({velocity[0], velocity[1], velocity[2]}, k.c));
  const PhiSplit split = split_Phi(t.Phi, k.lambda());
  py::dict d;
  d["U"] = to_array(t.U);
  d["Phi"] = to_array(t.Phi);
  d["phi"] = to_array(t.phi);
  d["P"] = to_array(t.P);
  d["S"] = to_array(t.S);
  d["Fgrav"] = to_array(split.gravity);
  d["Psi"] = to_array(split.charge);
  return d;
}

py::array_t<double> integrate_scenario(const std::string& scenario) {
  const Scenario s = parse_scenario(scenario);
  const PhysicalConstants k = s.constants();
  const Trajectory tr = integrate(ParticleState{Event::at(s.position, 0.0), four_velocity(s.velocity, k.c)},
                                  make_field(s.field, k), make_particle(s.m, s.e, k.lambda()), s.model, s.dtau,
                                  s.steps, s.integrate);
  const auto table = parse_trajectory_csv(trajectory_csv(tr, k.c));
  py::array_t<double> a({static_cast<py::ssize_t>(table.size()), py::ssize_t{9}});
  auto r = a.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < static_cast<py::ssize_t>(table.size()); ++i) {
    const auto& row = table[static_cast<std::size_t>(i)];
    const double v[9] = {row.tau, row.x1, row.x2, row.x3, row.t, row.v1, row.v2, row.v3, row.norm_drift};
    for (py::ssize_t j = 0; j < 9; ++j) r(i, j) = v[j];
  }
  return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "unigrav core: unified-potential tensors, dynamics and experiments";

  static py::exception<Error> error(m, "UnigravError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("lambda_", [](const std::string& units) { return PhysicalConstants::for_units(parse_units(units)).lambda(); },
        py::arg("units") = "scaled");
  m.def("tensors", &tensors, py::arg("field"), py::arg("event"), py::arg("velocity") = std::array<double, 3>{},
        py::arg("units") = "scaled", "U, Phi, phi, P, S and the gravity/charge split at one event (field as JSON).");
  m.def("integrate", &integrate_scenario, py::arg("scenario"),
        "Integrate a JSON scenario; rows are tau,x1,x2,x3,t,v1,v2,v3,normDrift.");

  m.def(
      "light_deflection",
      [](double gm, double impact, std::vector<double> speeds) { return rows(light_deflection(gm, impact, speeds)); },
      py::arg("gm_over_rc2"), py::arg("impact_radius") = 1.0, py::arg("speeds") = std::vector<double>{0.99, 0.999, 0.9999});
  m.def(
      "perihelion_precession",
      [](double gm, double ecc, int orbits, int steps) {
        PerihelionOptions o;
        o.steps_per_orbit = steps;
        return rows(perihelion_precession(gm, ecc, orbits, o));
      },
      py::arg("gm_over_ac2"), py::arg("eccentricity"), py::arg("orbits"), py::arg("steps_per_orbit") = 10000);
  m.def(
      "rotating_frame_check",
      [](double omega, double r, std::array<double, 3> v) { return rows(rotating_frame_check(omega, r, {v[0], v[1], v[2]})); },
      py::arg("omega"), py::arg("r"), py::arg("v_in_frame"));
  m.def(
      "coulomb_newton_lambda",
      [](const std::string& units) { return rows(coulomb_newton_lambda(PhysicalConstants::for_units(parse_units(units)))); },
      py::arg("units") = "scaled");
  m.def(
      "cyclotron_check", [](double e, double mass, double omega, double v0) { return rows(cyclotron_check(e, mass, omega, v0)); },
      py::arg("e"), py::arg("m"), py::arg("Omega"), py::arg("v0"));
  m.def(
      "invariant_suite", [](int samples, std::uint64_t seed) { return rows(invariant_suite(default_catalog(), samples, seed)); },
      py::arg("samples") = 100, py::arg("seed") = 0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit code, stdout, stderr).");
}
