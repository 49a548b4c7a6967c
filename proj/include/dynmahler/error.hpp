#pragma once

#include <stdexcept>
#include <string>

namespace dynmahler {

// Base for every domain failure the library reports. The CLI maps these to
// exit code 1; malformed input documents (SchemaError) map to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class DegreeCapError : public Error {
 public:
  using Error::Error;
};

class RootFindingError : public Error {
 public:
  RootFindingError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace dynmahler
