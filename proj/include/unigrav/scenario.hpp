#pragma once

// Scenario configs (JSON) and trajectory / report files.
//
// A scenario document looks like
//
//   {
//     "field":    {"kind": "point_mass", "M": 1e-3},
//     "particle": {"m": 1, "e": 0},
//     "initial":  {"position": [1, 0, 0], "velocity": [0, 0.0316, 0]},
//     "model": "full", "dtau": 0.1, "steps": 2000,
//     "units": "scaled", "seed": 0, "output": "orbit.csv"
//   }
//
// Field keys: kind, M, e, omega, Omega, v, a, C, length, children.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "unigrav/dynamics.hpp"
#include "unigrav/fields.hpp"

namespace unigrav {

struct Scenario {
  CatalogSpec field;
  double m = 1.0;
  double e = 0.0;
  Vec3 position{1.0, 0.0, 0.0};
  Vec3 velocity{};
  MotionModel model = MotionModel::Full;
  double dtau = 1e-2;
  int steps = 1000;
  Units units = Units::Scaled;
  std::uint64_t seed = 0;
  std::string output;
  IntegrateOptions integrate;

  PhysicalConstants constants() const { return PhysicalConstants::for_units(units); }
};

/// Parses and validates a scenario document. Throws Error{Config} naming the
/// offending key, or Error{Composition} for unsupported products.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// A field object in the scenario dialect (string shorthand or object).
CatalogSpec parse_field(const nlohmann::json& j, const std::string& where = "field");
nlohmann::json field_to_json(const CatalogSpec& spec);

/// Reads a whole file; Error{Io} names the path on failure.
std::string read_text_file(const std::string& path);
/// Writes via a temporary sibling and rename, so readers never see partial files.
void write_text_atomic(const std::string& path, const std::string& content);

struct TrajectoryRow {
  double tau = 0.0;
  double x1 = 0.0, x2 = 0.0, x3 = 0.0, t = 0.0;
  double v1 = 0.0, v2 = 0.0, v3 = 0.0;
  double norm_drift = 0.0;
};

/// `tau,x1,x2,x3,t,v1,v2,v3,normDrift`, one row per sample, 17 significant digits.
std::string trajectory_csv(const Trajectory& t, double c);
void write_trajectory_csv(const Trajectory& t, double c, const std::string& path);
std::vector<TrajectoryRow> parse_trajectory_csv(const std::string& text);
std::vector<TrajectoryRow> read_trajectory_csv(const std::string& path);

}  // namespace unigrav
