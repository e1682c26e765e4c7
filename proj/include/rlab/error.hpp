#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rlab {

// Mathematical rejection: the input is well formed but the requested
// structure does not exist (non-splittable filtration, non-flat
// connection, ...).  Maps to CLI exit code 1.
class MathError : public std::runtime_error {
public:
  MathError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// Malformed input: schema violations, parse errors, dimension mismatches.
// Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal contract violation.  Raising one of these signals a defect in
// this library, never a user error.
class DefectError : public std::logic_error {
public:
  explicit DefectError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace rlab
