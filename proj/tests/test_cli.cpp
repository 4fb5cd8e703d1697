#include <doctest.h>

#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "unigrav/cli.hpp"
#include "unigrav/experiments.hpp"
#include "unigrav/scenario.hpp"

using namespace unigrav;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_config(const std::string& name, const std::string& doc) {
  const auto path = (testutil::tmp_dir() / name).string();
  std::ofstream(path) << doc;
  return path;
}
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 1 with one diagnostic line") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {}, {"bogus"}, {"check", "--samples", "x"}, {"experiment"}, {"integrate"}, {"check", "--units", "cgs"}}) {
      const Result r = invoke(args);
      CHECK(r.code == 1);
      CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    CHECK(invoke({"--help"}).code == 0);
  }

  TEST_CASE("config errors exit 1") {
    const auto bad = write_config("bad_velocity.json", R"({"field": "point_mass", "initial": {"velocity": [2, 0, 0]}})");
    const Result r = invoke({"integrate", "--config", bad});
    CHECK(r.code == 1);
    CHECK(r.err.find("initial.velocity") != std::string::npos);
    CHECK(invoke({"integrate", "--config", "/nonexistent.json"}).code == 1);
  }

  TEST_CASE("check exits 0 on the default catalog") {
    const Result r = invoke({"check", "--samples", "5", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS antisymmetry.Phi") != std::string::npos);
  }

  TEST_CASE("check with a fields config") {
    const auto cfg = write_config("fields.json", R"({"fields": [{"kind": "point_mass", "M": 1e-3}, "constant"]})");
    CHECK(invoke({"check", "--config", cfg, "--samples", "3"}).code == 0);
  }

  TEST_CASE("integrate: zero field gives constant-velocity rows, byte-identical reruns") {
    const auto cfg = write_config("free.json", R"({"field": {"kind": "constant", "C": 2},
        "initial": {"position": [0, 0, 0], "velocity": [0.5, 0, 0]}, "dtau": 0.25, "steps": 8})");
    const auto out1 = (testutil::tmp_dir() / "free1.csv").string();
    const auto out2 = (testutil::tmp_dir() / "free2.csv").string();
    REQUIRE(invoke({"integrate", "--config", cfg, "--output", out1}).code == 0);
    REQUIRE(invoke({"--output", out2, "integrate", "--config", cfg}).code == 0);
    CHECK(read_text_file(out1) == read_text_file(out2));
    const auto rows = read_trajectory_csv(out1);
    REQUIRE(rows.size() == 9);
    for (const auto& row : rows) {
      CHECK(row.v1 == doctest::Approx(0.5).epsilon(1e-15));
      CHECK(row.v2 == 0.0);
      CHECK(row.norm_drift < 1e-15);
    }
  }

  TEST_CASE("field dump") {
    const Result r = invoke({"field", "--kind", "point_mass", "--M", "1e-3", "--event", "2,0,0,0"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"U", "Phi", "phi", "P", "S", "Gamma", "Psi", "a", "w", "E", "H"}) CHECK(j.contains(key));
    CHECK(j["U"][3][0].get<double>() == doctest::Approx(1.0005));
    const Result moving = invoke({"field", "--kind", "rotating_frame", "--omega", "0.1", "--event", "1,0,0,0"});
    REQUIRE(moving.code == 0);
    CHECK(nlohmann::json::parse(moving.out)["Gamma"].is_null());
    CHECK(invoke({"field", "--kind", "point_mass", "--M", "1", "--event", "0,0,0,0"}).code == 2);
  }

  TEST_CASE("experiment perihelion report row") {
    const auto path = (testutil::tmp_dir() / "peri.csv").string();
    const Result r = invoke({"experiment", "perihelion", "--gm", "1e-3", "--ecc", "0.2", "--orbits", "3",
                             "--steps-per-orbit", "2000", "--output", path});
    CHECK(r.code == 0);
    const std::string csv = read_text_file(path);
    CHECK(csv.rfind("name,measured,reference,rel_error,pass\nperihelion_advance_full,", 0) == 0);
    char ref[64];
    std::snprintf(ref, sizeof ref, ",%.17g,", 6.0 * M_PI * 1e-3 / 0.96);
    CHECK(csv.find(ref) != std::string::npos);
  }

  TEST_CASE("experiment failures exit 2, parameter errors exit 1") {
    CHECK(invoke({"experiment", "rotating", "--omega", "0.1", "--r", "1", "--v", "0,0.3,0"}).code == 2);
    CHECK(invoke({"experiment", "cyclotron", "--v0", "0.5"}).code == 1);
    CHECK(invoke({"experiment", "coulomb", "--units", "si"}).code == 0);
    CHECK(invoke({"experiment", "rotating"}).code == 0);
  }
}
