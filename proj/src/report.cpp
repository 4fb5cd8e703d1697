#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "unigrav/experiments.hpp"

namespace unigrav {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

bool Report::all_pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

const ReportRow* Report::find(const std::string& name) const {
  for (const auto& r : rows)
    if (r.name == name) return &r;
  return nullptr;
}

ReportRow compare_row(std::string name, double measured, double reference, double rel_tol, double abs_tol) {
  ReportRow row{std::move(name), measured, reference, 0.0, false};
  if (reference == 0.0) {
    row.rel_error = std::abs(measured);
    row.pass = row.rel_error <= abs_tol;
  } else {
    row.rel_error = std::abs(measured - reference) / std::abs(reference);
    row.pass = row.rel_error <= rel_tol;
  }
  if (!std::isfinite(measured)) row.pass = false;
  return row;
}

ReportRow upper_bound_row(std::string name, double measured, double bound) {
  ReportRow row{std::move(name), measured, bound, bound > 0.0 ? measured / bound : measured, false};
  row.pass = std::isfinite(measured) && measured <= bound;
  return row;
}

ReportRow lower_bound_row(std::string name, double measured, double bound) {
  ReportRow row{std::move(name), measured, bound, measured > 0.0 ? bound / measured : 1e300, false};
  row.pass = !std::isnan(measured) && measured >= bound;
  return row;
}

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << "name,measured,reference,rel_error,pass\n";
  for (const auto& row : r.rows)
    os << row.name << ',' << num(row.measured) << ',' << num(row.reference) << ',' << num(row.rel_error) << ','
       << (row.pass ? "true" : "false") << '\n';
  return os.str();
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  if (!r.title.empty()) os << "# " << r.title << '\n';
  for (const auto& row : r.rows) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s %-40s measured=%-24.12g reference=%-24.12g rel_error=%.3e\n",
                  row.pass ? "PASS" : "FAIL", row.name.c_str(), row.measured, row.reference, row.rel_error);
    os << buf;
  }
  return os.str();
}

}  // namespace unigrav
