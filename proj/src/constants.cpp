#include "unigrav/constants.hpp"

#include "unigrav/error.hpp"

namespace unigrav {

Units parse_units(const std::string& text) {
  if (text == "si" || text == "SI") return Units::SI;
  if (text == "scaled" || text == "SCALED") return Units::Scaled;
  throw Error(ErrorKind::Config, "units: expected 'si' or 'scaled', got '" + text + "'");
}

const char* to_string(Units units) { return units == Units::SI ? "si" : "scaled"; }

}  // namespace unigrav
