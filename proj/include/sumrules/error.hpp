#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumrules {

enum class ErrorCode {
  invalid_coefficients,
  invalid_weight,
  window_too_small,
  domain,
  nonpositive_density,
  quadrature_nonconvergence,
  completeness_mismatch,
  hypothesis_violation,
  hypothesis_not_met,
  config,
};

/// Machine-readable name, e.g. "window_too_small".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sumrules
