#pragma once

#include <stdexcept>
#include <string>

namespace unigrav {

enum class ErrorKind {
  Domain,       // argument outside the physical domain (|v| >= c, mu <= 0, ...)
  Singularity,  // evaluation at a field singularity or a singular projector
  Frame,        // operation requires the u = 0 frame at the point
  Composition,  // unsupported field composition
  Numerical,    // non-finite result, norm drift beyond bound
  Parameter,    // experiment parameter outside the supported regime
  Config,       // scenario / CLI configuration error
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace unigrav
