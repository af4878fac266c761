#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cuspforge {

enum class ErrorCode {
  parse,
  invalid_sequence,
  not_reducible,
  degenerate_remainder,
  not_realizable,
  not_standard,
  inconsistent,
  invalid_argument,
  entry_below_two,
  not_contractible,
  not_a_fiber,
  not_coprime,
  param_out_of_domain,
  too_large,
  internal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// All library failures are reported through this exception; the code is what
/// the C API hands back to callers.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cuspforge
