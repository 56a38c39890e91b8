// csg <config.json> [--output PATH] [--strict]
//
// Exit codes: 0 success, 2 a stability assertion failed, 1 any error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "csg/error.hpp"
#include "csg/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Truncated-exponential discrete semigroups on Gauss-Lobatto grids"};
  std::string config_path;
  std::string output;
  bool strict = false;
  app.add_option("config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
  app.add_option("--output,-o", output, "Report path (overrides output_path)");
  app.add_flag("--strict", strict, "Reject unknown config keys");
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_path, std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    if (!in) throw csg::Error(csg::ErrorKind::io_error, "cannot read " + config_path);

    auto config = csg::cli::parse_config(text.str(), strict);
    if (!output.empty()) config.output_path = output;

    const auto report = csg::cli::run(config);
    if (config.output_path.empty()) {
      std::cout << (config.format == csg::cli::Format::csv ? csg::cli::render_csv(report)
                                                            : csg::cli::render_json(report));
    } else {
      csg::cli::write_report(report, config.format, config.output_path);
    }
    std::cerr << "tau=" << report.tau << " k_a=" << report.k_a;
    if (report.contractivity) std::cerr << " contractivity=" << *report.contractivity;
    if (report.fitted_order) std::cerr << " fitted_order=" << *report.fitted_order;
    std::cerr << " wall_time=" << report.wall_time << "s\n";
    if (report.assertion_failed) std::cerr << "assertion failed: " << report.message << '\n';
    return csg::cli::exit_code(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
