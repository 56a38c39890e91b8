#pragma once

// Configuration-driven experiments behind the `csg` command-line tool.
//
// A config is a flat JSON object. Only "command" is required; every other key
// has a default matching the 2D-box example (8 elements per dimension, n = 3,
// alpha = 1/8, d = 3, K_A from the reference element).

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csg/hilbert.hpp"
#include "csg/semigroup.hpp"

namespace csg::cli {

enum class Command { stability, evolve, heisenberg, converge };
enum class Problem { box, heat1d };
enum class KaMode { reference, measured };
enum class Format { csv, json };

/// Initial state: a named preset or a polynomial sum_i c_i x^px_i y^py_i.
struct Psi0Spec {
  std::string preset = "bump";  // "bump", "offset_bump" or "poly"
  std::vector<std::array<double, 3>> terms;

  hilbert::Sampleable function() const;
};

struct ExperimentConfig {
  Command command = Command::heisenberg;
  Problem problem = Problem::box;
  std::size_t elements_per_dim = 8;
  int order_n = 3;
  double alpha = 0.125;
  double d_exponent = 3.0;
  KaMode k_a_mode = KaMode::reference;
  std::size_t k_max = 200;
  semigroup::Phase phase = semigroup::Phase::imaginary;
  Psi0Spec psi0;
  double final_time = 0.1;
  std::size_t num_taus = 4;
  unsigned seed = 0;
  std::string output_path;
  Format format = Format::csv;
};

/// Parses and validates; `strict` rejects unknown keys.
ExperimentConfig parse_config(std::string_view text, bool strict = false);

struct RunReport {
  ExperimentConfig config;
  double h = 0.0;
  double tau = 0.0;
  double k_a = 0.0;
  std::optional<double> contractivity;
  std::optional<double> fitted_order;
  bool assertion_failed = false;
  std::string message;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> records;
  double wall_time = 0.0;  // seconds; never written to report files
};

RunReport run(const ExperimentConfig& config);

/// Process exit code for a finished run: 0, or 2 when an assertion failed.
int exit_code(const RunReport& report) noexcept;

std::string render_csv(const RunReport& report);
std::string render_json(const RunReport& report);
void write_report(const RunReport& report, Format format, const std::string& path);

/// Reads back a JSON report (config echo and numeric fields).
RunReport parse_report(std::string_view json_text);

std::string_view to_string(Command c) noexcept;
std::string_view to_string(Problem p) noexcept;
std::string_view to_string(KaMode m) noexcept;
std::string_view to_string(Format f) noexcept;

}  // namespace csg::cli
