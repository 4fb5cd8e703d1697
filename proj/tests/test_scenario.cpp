#include <doctest.h>

#include <fstream>

#include "test_util.hpp"
#include "unigrav/error.hpp"
#include "unigrav/scenario.hpp"

using namespace unigrav;

namespace {
ErrorKind kind_of(const std::string& doc) {
  try {
    parse_scenario(doc);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

std::string message_of(const std::string& doc) {
  try {
    parse_scenario(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("minimal config gets defaults") {
    const Scenario s = parse_scenario(R"({"field": {"kind": "point_mass", "M": 1}})");
    CHECK(s.field.kind == FieldKind::PointMass);
    CHECK(s.field.mass == 1.0);
    CHECK(s.units == Units::Scaled);
    CHECK(s.model == MotionModel::Full);
    CHECK(s.seed == 0);
    CHECK(s.m == 1.0);
    CHECK(s.e == 0.0);
    CHECK(s.dtau > 0.0);
    CHECK(s.steps >= 1);
    CHECK_FALSE(s.integrate.renormalize);
  }

  TEST_CASE("full config") {
    const Scenario s = parse_scenario(R"({
      "field": {"kind": "product", "children": [{"kind": "point_mass", "M": 1e-3}, "point_charge",
                                                {"kind": "rotating_frame", "omega": 0.1}]},
      "particle": {"m": 2, "e": -1},
      "initial": {"position": [1, 2, 3], "velocity": [0.1, 0, 0]},
      "model": "newtonian", "dtau": 0.5, "steps": 10, "units": "si", "seed": 42, "output": "x.csv",
      "renormalize": true, "norm_bound": 1e-8})");
    CHECK(s.field.children.size() == 3);
    CHECK(s.field.children[2].omega == 0.1);
    CHECK(s.m == 2.0);
    CHECK(s.position[2] == 3.0);
    CHECK(s.model == MotionModel::Newtonian);
    CHECK(s.units == Units::SI);
    CHECK(s.seed == 42);
    CHECK(s.output == "x.csv");
    CHECK(s.integrate.renormalize);
    CHECK(s.integrate.norm_bound == 1e-8);
  }

  TEST_CASE("unknown keys are listed") {
    const std::string msg = message_of(R"({"field": {"kind": "point_mass", "mass": 1}, "colour": 3})");
    CHECK(msg.find("colour") != std::string::npos);
    CHECK(kind_of(R"({"field": "point_mass", "colour": 3})") == ErrorKind::Config);
    CHECK(message_of(R"({"field": {"kind": "point_mass", "mass": 1}})").find("field.mass") != std::string::npos);
  }

  TEST_CASE("constraint violations name the key") {
    const std::string msg = message_of(R"({"field": "point_mass", "initial": {"velocity": [1, 0, 0]}})");
    CHECK(msg.find("initial.velocity") != std::string::npos);
    CHECK(message_of(R"({"field": "point_mass", "dtau": 0})").find("dtau") != std::string::npos);
    CHECK(message_of(R"({"field": "point_mass", "steps": 0})").find("steps") != std::string::npos);
    CHECK(kind_of(R"({"field": "point_mass", "model": "warp"})") == ErrorKind::Config);
    CHECK(kind_of(R"({"field": "point_mass", "units": "cgs"})") == ErrorKind::Config);
    CHECK(kind_of(R"({"particle": {"m": 1}})") == ErrorKind::Config);
    CHECK(kind_of("{not json") == ErrorKind::Config);
    // SI: |v| < c is fine at 1e3 m/s
    CHECK_NOTHROW(parse_scenario(R"({"field": "point_mass", "units": "si", "initial": {"velocity": [1000, 0, 0]}})"));
  }

  TEST_CASE("two moving product children are rejected") {
    const std::string doc = R"({"field": {"kind": "product", "children": [
        {"kind": "rotating_frame", "omega": 0.1}, {"kind": "uniform_motion", "v": [0.1, 0, 0]}]}})";
    CHECK(kind_of(doc) == ErrorKind::Composition);
    CHECK(message_of(doc).find("unsupported composition") != std::string::npos);
  }

  TEST_CASE("trajectory CSV") {
    CHECK(trajectory_csv(Trajectory{}, 1.0) == "tau,x1,x2,x3,t,v1,v2,v3,normDrift\n");

    Trajectory rest;
    rest.samples.push_back({0.0, ParticleState{Event{1.0, 0.0, 0.0, 0.0}, four_velocity({0, 0, 0}, 1.0)}, 0.0, 0.0});
    CHECK(trajectory_csv(rest, 1.0) == "tau,x1,x2,x3,t,v1,v2,v3,normDrift\n0,1,0,0,0,0,0,0,0\n");

    Trajectory t;
    for (int i = 0; i < 5; ++i) {
      const double x = 0.1 * i + 1.0 / 3.0;
      t.samples.push_back({x, ParticleState{Event{x, -x, x * x, 7.0 * x}, four_velocity({0.1 / (i + 1), M_PI / 10, 0}, 1.0)},
                           1e-17 * i, 0.0});
    }
    const auto path = (testutil::tmp_dir() / "roundtrip.csv").string();
    write_trajectory_csv(t, 1.0, path);
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    const auto rows = read_trajectory_csv(path);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& s = t.samples[i];
      const Vec3 v = three_velocity(s.state.V, 1.0);
      CHECK(rows[i].tau == s.tau);
      CHECK(rows[i].x3 == s.state.event.x3);
      CHECK(rows[i].t == s.state.event.t);
      CHECK(rows[i].v1 == v[0]);
      CHECK(rows[i].v2 == v[1]);
      CHECK(rows[i].norm_drift == s.norm_drift);
    }
    // rows are written in tau order
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].tau > rows[i - 1].tau);
  }

  TEST_CASE("I/O errors name the path") {
    try {
      write_trajectory_csv(Trajectory{}, 1.0, "/nonexistent-dir/x.csv");
      FAIL("expected an I/O error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Io);
      CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_trajectory_csv("a,b\n"), Error);
    CHECK_THROWS_AS(parse_trajectory_csv("tau,x1,x2,x3,t,v1,v2,v3,normDrift\n1,2,3\n"), Error);
  }
}
