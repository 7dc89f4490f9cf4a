#pragma once

#include <stdexcept>
#include <string>

namespace resim {

/// Malformed or out-of-contract input: bad files, unknown names,
/// violated preconditions. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// No schedule can meet the deadlines. Carries the first blocking step
/// (1-based index of the action that cannot be completed in time).
class InfeasibleError : public InputError {
 public:
  InfeasibleError(const std::string& what, int blocking_step)
      : InputError(what), blocking_step_(blocking_step) {}
  int blocking_step() const { return blocking_step_; }

 private:
  int blocking_step_;
};

}  // namespace resim
