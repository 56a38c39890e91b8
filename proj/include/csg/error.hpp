#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csg {

enum class ErrorKind {
  dimension_overflow,
  shape_mismatch,
  not_symmetric,
  not_spd,
  no_convergence,
  negative_input,
  empty_domain,
  unsupported_order,
  degenerate_grid,
  non_finite_sample,
  length_mismatch,
  insufficient_samples,
  nonpositive_error,
  non_contractive_input,
  sample_count_mismatch,
  empty_tau_list,
  zero_initial_state,
  state_annihilated,
  invalid_step_rule,
  parse_error,
  validation_error,
  unknown_key,
  io_error,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace csg
