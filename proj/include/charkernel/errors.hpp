#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charkernel {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched degrees, foreign groups, non-subgroups.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Element cap, class cap or time budget exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Something that is mathematically impossible happened; carries a diagnostic.
class InternalError : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  SpecError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace charkernel
