#include "csg/error.hpp"

namespace csg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::dimension_overflow: return "dimension-overflow";
    case ErrorKind::shape_mismatch: return "shape-mismatch";
    case ErrorKind::not_symmetric: return "not-symmetric";
    case ErrorKind::not_spd: return "not-spd";
    case ErrorKind::no_convergence: return "no-convergence";
    case ErrorKind::negative_input: return "negative-input";
    case ErrorKind::empty_domain: return "empty-domain";
    case ErrorKind::unsupported_order: return "unsupported-order";
    case ErrorKind::degenerate_grid: return "degenerate-grid";
    case ErrorKind::non_finite_sample: return "non-finite-sample";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::insufficient_samples: return "insufficient-samples";
    case ErrorKind::nonpositive_error: return "nonpositive-error";
    case ErrorKind::non_contractive_input: return "non-contractive-input";
    case ErrorKind::sample_count_mismatch: return "sample-count-mismatch";
    case ErrorKind::empty_tau_list: return "empty-tau-list";
    case ErrorKind::zero_initial_state: return "zero-initial-state";
    case ErrorKind::state_annihilated: return "state-annihilated";
    case ErrorKind::invalid_step_rule: return "invalid-step-rule";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::validation_error: return "validation-error";
    case ErrorKind::unknown_key: return "unknown-key";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace csg
