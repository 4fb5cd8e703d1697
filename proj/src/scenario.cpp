#include "unigrav/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace unigrav {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  std::string unknown;
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key)) continue;
    unknown += unknown.empty() ? "" : ", ";
    unknown += where.empty() ? key : where + "." + key;
  }
  if (!unknown.empty()) config_error("unknown keys: " + unknown);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) config_error(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) config_error(where + ": must be finite");
  return x;
}

Vec3 vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) config_error(where + ": expected an array of 3 numbers");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]"), number(j[2], where + "[2]")};
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) config_error(where + ": expected a string");
  return j.get<std::string>();
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

CatalogSpec parse_field(const json& j, const std::string& where) {
  CatalogSpec spec;
  if (j.is_string()) {
    spec.kind = parse_field_kind(j.get<std::string>());
    return spec;
  }
  if (!j.is_object()) config_error(where + ": expected an object or a kind name");
  reject_unknown(j, {"kind", "M", "e", "omega", "Omega", "v", "a", "C", "length", "children"}, where);
  if (!j.contains("kind")) config_error(where + ".kind: missing");
  spec.kind = parse_field_kind(text(j["kind"], where + ".kind"));
  if (j.contains("M")) spec.mass = number(j["M"], where + ".M");
  if (j.contains("e")) spec.charge = number(j["e"], where + ".e");
  if (j.contains("omega")) spec.omega = number(j["omega"], where + ".omega");
  if (j.contains("Omega")) spec.big_omega = number(j["Omega"], where + ".Omega");
  if (j.contains("v")) spec.velocity = vec3(j["v"], where + ".v");
  if (j.contains("a")) spec.accel = vec3(j["a"], where + ".a");
  if (j.contains("C")) spec.scale = number(j["C"], where + ".C");
  if (j.contains("length")) {
    spec.length = number(j["length"], where + ".length");
    if (!(spec.length > 0.0)) config_error(where + ".length: must be > 0");
  }
  if (j.contains("children")) {
    const json& ch = j["children"];
    if (!ch.is_array()) config_error(where + ".children: expected an array");
    for (std::size_t i = 0; i < ch.size(); ++i)
      spec.children.push_back(parse_field(ch[i], where + ".children[" + std::to_string(i) + "]"));
  }
  return spec;
}

json field_to_json(const CatalogSpec& s) {
  json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case FieldKind::PointMass: j["M"] = s.mass; break;
    case FieldKind::PointCharge: j["e"] = s.charge; break;
    case FieldKind::RotatingFrame: j["omega"] = s.omega; break;
    case FieldKind::ImaginaryRotation: j["Omega"] = s.big_omega; break;
    case FieldKind::UniformMotion: j["v"] = {s.velocity[0], s.velocity[1], s.velocity[2]}; break;
    case FieldKind::UniformGravity: j["a"] = {s.accel[0], s.accel[1], s.accel[2]}; break;
    case FieldKind::Constant: j["C"] = s.scale; break;
    case FieldKind::Product:
      j["children"] = json::array();
      for (const auto& c : s.children) j["children"].push_back(field_to_json(c));
      break;
  }
  if (s.length != 1.0) j["length"] = s.length;
  return j;
}

Scenario parse_scenario(const std::string& doc) {
  json j;
  try {
    j = json::parse(doc);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) config_error("config: expected a JSON object at top level");
  reject_unknown(j, {"field", "particle", "initial", "model", "dtau", "steps", "units", "seed", "output", "renormalize",
                     "norm_bound"},
                 "");

  Scenario s;
  if (!j.contains("field")) config_error("field: missing");
  s.field = parse_field(j["field"]);
  validate(s.field);

  if (j.contains("particle")) {
    const json& p = j["particle"];
    if (!p.is_object()) config_error("particle: expected an object");
    reject_unknown(p, {"m", "e"}, "particle");
    if (p.contains("m")) s.m = number(p["m"], "particle.m");
    if (p.contains("e")) s.e = number(p["e"], "particle.e");
    if (!(s.m > 0.0)) config_error("particle.m: must be > 0");
  }
  if (j.contains("initial")) {
    const json& in = j["initial"];
    if (!in.is_object()) config_error("initial: expected an object");
    reject_unknown(in, {"position", "velocity"}, "initial");
    if (in.contains("position")) s.position = vec3(in["position"], "initial.position");
    if (in.contains("velocity")) s.velocity = vec3(in["velocity"], "initial.velocity");
  }
  if (j.contains("model")) {
    try {
      s.model = parse_motion_model(text(j["model"], "model"));
    } catch (const Error& e) {
      config_error(std::string("model: ") + e.what());
    }
  }
  if (j.contains("units")) s.units = parse_units(text(j["units"], "units"));
  if (j.contains("dtau")) s.dtau = number(j["dtau"], "dtau");
  if (!(s.dtau > 0.0)) config_error("dtau: must be > 0");
  if (j.contains("steps")) {
    if (!j["steps"].is_number_integer()) config_error("steps: expected an integer");
    const auto n = j["steps"].get<long long>();
    if (n < 1 || n > 1000000000LL) config_error("steps: must lie in [1, 1e9]");
    s.steps = static_cast<int>(n);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) config_error("seed: expected an integer >= 0");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output")) s.output = text(j["output"], "output");
  if (j.contains("renormalize")) {
    if (!j["renormalize"].is_boolean()) config_error("renormalize: expected true or false");
    s.integrate.renormalize = j["renormalize"].get<bool>();
  }
  if (j.contains("norm_bound")) {
    s.integrate.norm_bound = number(j["norm_bound"], "norm_bound");
    if (!(s.integrate.norm_bound > 0.0)) config_error("norm_bound: must be > 0");
  }

  const double c = s.constants().c;
  if (!(norm(s.velocity) < c))
    config_error("initial.velocity: |v| = " + fmt17(norm(s.velocity)) + " must be < c = " + fmt17(c));
  return s;
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot rename into '" + path + "'");
  }
}

std::string trajectory_csv(const Trajectory& tr, double c) {
  std::string out = "tau,x1,x2,x3,t,v1,v2,v3,normDrift\n";
  for (const auto& s : tr.samples) {
    const Event& e = s.state.event;
    const Vec3 v = three_velocity(s.state.V, c, 1e-6);
    for (double x : {s.tau, e.x1, e.x2, e.x3, e.t, v[0], v[1], v[2]}) out += fmt17(x) + ",";
    out += fmt17(s.norm_drift) + "\n";
  }
  return out;
}

void write_trajectory_csv(const Trajectory& t, double c, const std::string& path) {
  write_text_atomic(path, trajectory_csv(t, c));
}

std::vector<TrajectoryRow> parse_trajectory_csv(const std::string& doc) {
  std::istringstream in(doc);
  std::string line;
  if (!std::getline(in, line) || line != "tau,x1,x2,x3,t,v1,v2,v3,normDrift")
    throw Error(ErrorKind::Io, "trajectory csv: unexpected header");
  std::vector<TrajectoryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[9];
    std::istringstream ls(line);
    std::string cell;
    int n = 0;
    while (n < 9 && std::getline(ls, cell, ',')) {
      char* end = nullptr;
      v[n] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw Error(ErrorKind::Io, "trajectory csv: bad number '" + cell + "'");
      ++n;
    }
    if (n != 9 || std::getline(ls, cell, ','))
      throw Error(ErrorKind::Io, "trajectory csv: expected 9 columns in '" + line + "'");
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
  }
  return rows;
}

std::vector<TrajectoryRow> read_trajectory_csv(const std::string& path) {
  return parse_trajectory_csv(read_text_file(path));
}

}  // namespace unigrav
