#include "csg/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "csg/error.hpp"
#include "csg/grid.hpp"
#include "csg/matlin.hpp"
#include "csg/quantum.hpp"

namespace csg::cli {

using nlohmann::json;
using semigroup::Phase;

namespace {

const std::set<std::string> kKnownKeys = {
    "command", "problem", "elements_per_dim", "order_n", "alpha",  "d_exponent", "k_a_mode",
    "k_max",   "phase",   "psi0",             "final_time", "num_taus", "seed", "output_path",
    "format"};

template <typename Enum, std::size_t N>
Enum enum_from(const std::string& s, const std::array<Enum, N>& values, const char* key) {
  for (Enum v : values)
    if (to_string(v) == s) return v;
  throw Error(ErrorKind::validation_error, std::string("unknown value '") + s + "' for " + key);
}

template <typename T>
T get_number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw Error(ErrorKind::validation_error, std::string(key) + " must be a number");
  if constexpr (std::is_integral_v<T>) {
    const double d = v.get<double>();
    if (d < 0.0 || d != std::floor(d)) {
      throw Error(ErrorKind::validation_error, std::string(key) + " must be a nonnegative integer");
    }
    return static_cast<T>(d);
  } else {
    return v.get<T>();
  }
}

std::string get_string(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw Error(ErrorKind::validation_error, std::string(key) + " must be a string");
  return v.get<std::string>();
}

Psi0Spec parse_psi0(const json& v) {
  Psi0Spec spec;
  if (v.is_string()) {
    spec.preset = v.get<std::string>();
    if (spec.preset != "bump" && spec.preset != "offset_bump") {
      throw Error(ErrorKind::validation_error, "unknown psi0 preset '" + spec.preset + "'");
    }
    return spec;
  }
  if (v.is_object() && v.contains("terms") && v.at("terms").is_array()) {
    spec.preset = "poly";
    for (const auto& t : v.at("terms")) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number() || !t[2].is_number()) {
        throw Error(ErrorKind::validation_error, "psi0 terms are [power_x, power_y, coefficient]");
      }
      spec.terms.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
    }
    if (spec.terms.empty()) throw Error(ErrorKind::validation_error, "psi0 needs at least one term");
    return spec;
  }
  throw Error(ErrorKind::validation_error, "psi0 must be a preset name or {\"terms\": [...]}");
}

json psi0_to_json(const Psi0Spec& spec) {
  if (spec.preset != "poly") return spec.preset;
  json terms = json::array();
  for (const auto& t : spec.terms) terms.push_back({t[0], t[1], t[2]});
  return json{{"terms", terms}};
}

json config_to_json(const ExperimentConfig& c) {
  return json{{"command", to_string(c.command)},
              {"problem", to_string(c.problem)},
              {"elements_per_dim", c.elements_per_dim},
              {"order_n", c.order_n},
              {"alpha", c.alpha},
              {"d_exponent", c.d_exponent},
              {"k_a_mode", to_string(c.k_a_mode)},
              {"k_max", c.k_max},
              {"phase", semigroup::to_string(c.phase)},
              {"psi0", psi0_to_json(c.psi0)},
              {"final_time", c.final_time},
              {"num_taus", c.num_taus},
              {"seed", c.seed},
              {"output_path", c.output_path},
              {"format", to_string(c.format)}};
}

void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::validation_error, m); };
  if (!(c.alpha > 0.0 && c.alpha <= 1.0)) fail("alpha must lie in (0, 1]");
  if (c.order_n < 1 || c.order_n > 6) fail("order_n must lie in [1, 6]");
  if (c.elements_per_dim < 2 || c.elements_per_dim > 64) fail("elements_per_dim must lie in [2, 64]");
  if (!(c.d_exponent > 0.0)) fail("d_exponent must be positive");
  if (c.k_max > 1000000) fail("k_max must not exceed 1e6");
  if (!(c.final_time > 0.0)) fail("final_time must be positive");
  if (c.num_taus < 4 || c.num_taus > 12) fail("num_taus must lie in [4, 12]");
  if (c.command == Command::heisenberg && c.problem != Problem::box) fail("heisenberg runs need the box problem");
  if (c.command == Command::heisenberg && c.phase != Phase::imaginary) fail("heisenberg runs need the imaginary phase");
}

// Operator, h and projector-free initial state for the selected problem.
struct Setup {
  hilbert::OperatorRep rep;
  double h;
  ComplexVector u0;
  std::optional<quantum::QuantumSystem> box;
};

Setup make_setup(const ExperimentConfig& c) {
  const auto psi0 = c.psi0.function();
  if (c.problem == Problem::box) {
    auto qs = quantum::build_box_system(c.elements_per_dim, psi0);
    Setup s{qs.hamiltonian, qs.spacing(), qs.psi0, std::nullopt};
    s.box.emplace(std::move(qs));
    return s;
  }
  const auto g = grid::build_grid_1d({-1.0, 1.0}, c.elements_per_dim);
  const auto chain = hilbert::dirichlet_heat_chain(g);
  const hilbert::ParticularProjector p(g, grid::interior_mask(g));
  ComplexVector u0(hilbert::decompose(psi0, p));
  return Setup{chain.factorization(), g.spacing(), std::move(u0), std::nullopt};
}

semigroup::StepRule make_rule(const ExperimentConfig& c, const Setup& s) {
  if (c.k_a_mode == KaMode::measured) {
    return semigroup::calibrated_step_rule(s.rep, c.alpha, s.h, c.d_exponent);
  }
  const auto ref = grid::reference_element_gl2();
  return semigroup::make_step_rule(s.rep, c.alpha, s.h, c.d_exponent, matlin::norm_inf(ref.d * ref.d));
}

bool contractivity_asserted(const ExperimentConfig& c) {
  if (c.phase == Phase::real_negative) return true;
  if (c.phase == Phase::imaginary) return c.order_n % 4 == 3 || c.order_n % 4 == 0;
  return false;
}

void check_contractivity(const ExperimentConfig& c, RunReport& r, double v, const std::string& what) {
  if (contractivity_asserted(c) && v > 1.0 + 1e-12) {
    r.assertion_failed = true;
    r.message = what + " = " + std::to_string(v) + " exceeds 1";
  }
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::stability: return "stability";
    case Command::evolve: return "evolve";
    case Command::heisenberg: return "heisenberg";
    case Command::converge: return "converge";
  }
  return "unknown";
}

std::string_view to_string(Problem p) noexcept { return p == Problem::box ? "box" : "heat1d"; }
std::string_view to_string(KaMode m) noexcept { return m == KaMode::reference ? "reference" : "measured"; }
std::string_view to_string(Format f) noexcept { return f == Format::csv ? "csv" : "json"; }

hilbert::Sampleable Psi0Spec::function() const {
  if (preset == "bump") return quantum::symmetric_bump();
  if (preset == "offset_bump") return quantum::offset_bump(0.25, 0.0);
  return [terms = terms](const grid::Point& p) {
    double s = 0.0;
    for (const auto& t : terms) s += t[2] * std::pow(p[0], t[0]) * std::pow(p[1], t[1]);
    return s;
  };
}

ExperimentConfig parse_config(std::string_view text, bool strict) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::parse_error, "config must be a JSON object");
  if (strict) {
    for (const auto& [key, _] : j.items()) {
      if (!kKnownKeys.count(key)) throw Error(ErrorKind::unknown_key, key);
    }
  }
  if (!j.contains("command")) throw Error(ErrorKind::validation_error, "missing \"command\"");

  ExperimentConfig c;
  c.command = enum_from(get_string(j, "command"),
                        std::array{Command::stability, Command::evolve, Command::heisenberg, Command::converge},
                        "command");
  if (j.contains("problem")) {
    c.problem = enum_from(get_string(j, "problem"), std::array{Problem::box, Problem::heat1d}, "problem");
  }
  // Problem-dependent defaults: the 1D heat model is a generic second-order
  // dissipative operator.
  if (c.problem == Problem::heat1d) {
    c.d_exponent = 2.0;
    c.k_a_mode = KaMode::measured;
    c.phase = Phase::real_negative;
  }
  if (j.contains("elements_per_dim")) c.elements_per_dim = get_number<std::size_t>(j, "elements_per_dim");
  if (j.contains("order_n")) c.order_n = get_number<int>(j, "order_n");
  if (j.contains("alpha")) c.alpha = get_number<double>(j, "alpha");
  if (j.contains("d_exponent")) c.d_exponent = get_number<double>(j, "d_exponent");
  if (j.contains("k_a_mode")) {
    c.k_a_mode = enum_from(get_string(j, "k_a_mode"), std::array{KaMode::reference, KaMode::measured}, "k_a_mode");
  }
  if (j.contains("k_max")) c.k_max = get_number<std::size_t>(j, "k_max");
  if (j.contains("phase")) c.phase = semigroup::phase_from_string(get_string(j, "phase"));
  if (j.contains("psi0")) c.psi0 = parse_psi0(j.at("psi0"));
  if (j.contains("final_time")) c.final_time = get_number<double>(j, "final_time");
  if (j.contains("num_taus")) c.num_taus = get_number<std::size_t>(j, "num_taus");
  if (j.contains("seed")) c.seed = get_number<unsigned>(j, "seed");
  if (j.contains("output_path")) c.output_path = get_string(j, "output_path");
  if (j.contains("format")) {
    c.format = enum_from(get_string(j, "format"), std::array{Format::csv, Format::json}, "format");
  }
  validate(c);
  return c;
}

RunReport run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.config = config;

  const Setup setup = make_setup(config);
  const auto rule = make_rule(config, setup);
  r.h = rule.h;
  r.tau = rule.tau;
  r.k_a = rule.k_a;
  const auto& gram = setup.rep.gram;

  switch (config.command) {
    case Command::stability: {
      const auto sg = semigroup::basic_element(setup.rep, rule.tau, config.order_n, config.phase);
      r.contractivity = semigroup::contractivity(sg);
      check_contractivity(config, r, *r.contractivity, "||g||_M");
      r.columns = {"k", "norm"};
      for (std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{100}, std::size_t{1000}}) {
        const double v = k == 1 ? *r.contractivity : semigroup::power_norm(sg, k);
        r.records.push_back({static_cast<double>(k), v});
        if (!r.assertion_failed) check_contractivity(config, r, v, "||g^" + std::to_string(k) + "||_M");
      }
      break;
    }
    case Command::evolve: {
      const auto sg = semigroup::basic_element(setup.rep, rule.tau, config.order_n, config.phase);
      r.columns = {"k", "t", "gap", "norm"};
      ComplexVector u = setup.u0;
      for (std::size_t k = 0; k <= config.k_max; ++k) {
        ComplexVector next = sg.step(u);
        ComplexVector diff = next;
        for (std::size_t i = 0; i < diff.size(); ++i) {
          diff.re[i] -= u.re[i];
          diff.im[i] -= u.im[i];
        }
        r.records.push_back(
            {static_cast<double>(k), static_cast<double>(k) * rule.tau, gram.norm(diff), gram.norm(u)});
        u = std::move(next);
      }
      break;
    }
    case Command::heisenberg: {
      const auto& qs = *setup.box;
      const auto sg = quantum::schrodinger_semigroup(qs, config.order_n, rule.tau);
      const auto trace = quantum::heisenberg_trace(qs, sg, config.k_max);
      r.columns = {"k", "t", "p_psi", "ex_x_re", "ex_x_im", "ex_y_re", "ex_y_im"};
      for (std::size_t k = 0; k < trace.times.size(); ++k) {
        r.records.push_back({static_cast<double>(k), trace.times[k], trace.norms[k], trace.ex_x[k].real(),
                             trace.ex_x[k].imag(), trace.ex_y[k].real(), trace.ex_y[k].imag()});
      }
      for (std::size_t k = 1; k < trace.norms.size(); ++k) {
        if (contractivity_asserted(config) && trace.norms[k] > trace.norms[k - 1] * (1.0 + 1e-10)) {
          r.assertion_failed = true;
          r.message = "P_psi increased at k = " + std::to_string(k);
          break;
        }
      }
      break;
    }
    case Command::converge: {
      // tau_j = T / (k0 2^j) with k0 = ceil(T / tau_rule), so every step size
      // respects the rule and divides T exactly.
      const double k0 = std::ceil(config.final_time / rule.tau - 1e-9);
      std::vector<double> taus;
      for (std::size_t j = 0; j < config.num_taus; ++j) {
        taus.push_back(config.final_time / (k0 * std::ldexp(1.0, static_cast<int>(j))));
      }
      const auto study = semigroup::convergence_study(setup.rep, setup.u0, config.final_time, config.order_n,
                                                      taus, config.phase);
      r.columns = {"tau", "error"};
      for (std::size_t j = 0; j < study.taus.size(); ++j) r.records.push_back({study.taus[j], study.errors[j]});
      if (study.order_defined) r.fitted_order = study.fitted_order;
      break;
    }
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int exit_code(const RunReport& report) noexcept { return report.assertion_failed ? 2 : 0; }

std::string render_csv(const RunReport& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << report.columns[i];
  out << '\n';
  for (const auto& row : report.records) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (report.columns[i] == "k") {
        out << static_cast<long long>(row[i]);
      } else {
        out << format_number(row[i]);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string render_json(const RunReport& report) {
  json records = json::array();
  for (const auto& row : report.records) {
    json rec = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[report.columns[i]] = row[i];
    records.push_back(std::move(rec));
  }
  json j{{"config", config_to_json(report.config)},
         {"h", report.h},
         {"tau", report.tau},
         {"k_a", report.k_a},
         {"contractivity", report.contractivity ? json(*report.contractivity) : json(nullptr)},
         {"fitted_order", report.fitted_order ? json(*report.fitted_order) : json(nullptr)},
         {"assertion_failed", report.assertion_failed},
         {"message", report.message},
         {"columns", report.columns},
         {"records", records}};
  return j.dump(2) + "\n";
}

void write_report(const RunReport& report, Format format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io_error, "cannot open " + path);
  out << (format == Format::csv ? render_csv(report) : render_json(report));
  out.flush();
  if (!out) throw Error(ErrorKind::io_error, "write failed for " + path);
}

RunReport parse_report(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
  RunReport r;
  r.config = parse_config(j.at("config").dump(), true);
  r.h = j.at("h").get<double>();
  r.tau = j.at("tau").get<double>();
  r.k_a = j.at("k_a").get<double>();
  if (!j.at("contractivity").is_null()) r.contractivity = j.at("contractivity").get<double>();
  if (!j.at("fitted_order").is_null()) r.fitted_order = j.at("fitted_order").get<double>();
  r.assertion_failed = j.at("assertion_failed").get<bool>();
  r.message = j.at("message").get<std::string>();
  r.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& rec : j.at("records")) {
    std::vector<double> row;
    for (const auto& col : r.columns) row.push_back(rec.at(col).get<double>());
    r.records.push_back(std::move(row));
  }
  return r;
}

}  // namespace csg::cli
