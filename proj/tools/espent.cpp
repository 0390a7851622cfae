// espent: entanglement measures from squared wedge volumes.
//
//   espent analyze <file> [--r-max N] [--k-max N] [--alpha 2,3] [--max-terms M]
//                         [--tol T] [--simulate-bunching] [--renormalize]
//                         [--json out.json] [--strict]
//   espent random --n N --d D --seed S [-o file]
//   espent quench --model tfi|xxz --length L --cut C --tmax T --steps K [--r-max N]
//
// Exit codes: 0 success, 2 parse/validation error, 3 unconverged series
// with --strict, 1 anything else.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "espent/analysis.hpp"
#include "espent/error.hpp"
#include "espent/io.hpp"
#include "espent/quench.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNotConverged = 3;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void add_series_options(CLI::App* cmd, espent::AnalysisOptions& opts) {
  cmd->add_option("--r-max", opts.r_max, "highest truncated entropy order S_r (default min(n, 4))");
  cmd->add_option("--max-terms", opts.series.max_outer_terms, "cap on outer series terms")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opts.series.rel_tol, "relative stopping tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement entropies from elementary symmetric polynomials"};
  app.require_subcommand(1);

  espent::AnalysisOptions analysis;
  std::string state_path;
  std::string json_path;
  bool renormalize = false;
  bool strict = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "full report for a state file (JSON or CSV)");
  analyze_cmd->add_option("file", state_path, "state file")->required();
  add_series_options(analyze_cmd, analysis);
  analyze_cmd->add_option("--k-max", analysis.k_max, "highest purity order");
  analyze_cmd->add_option("--alpha", analysis.alphas, "Renyi orders")->delimiter(',');
  analyze_cmd->add_flag("--simulate-bunching", analysis.simulate_bunching,
                        "simulate the two-copy beamsplitter protocol");
  analyze_cmd->add_flag("--renormalize", renormalize, "accept and rescale unnormalized states");
  analyze_cmd->add_option("--json", json_path, "write the report as JSON");
  analyze_cmd->add_flag("--strict", strict, "exit 3 if any series did not converge");

  std::size_t rand_n = 0;
  std::size_t rand_d = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  auto* random_cmd = app.add_subcommand("random", "Haar-random pure state as JSON");
  random_cmd->add_option("--n", rand_n, "dimension of subsystem M")->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--d", rand_d, "dimension of subsystem R")->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--seed", seed, "generator seed")->required();
  random_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

  espent::QuenchConfig quench;
  std::string model = "tfi";
  std::string quench_json;
  bool quench_strict = false;
  auto* quench_cmd = app.add_subcommand("quench", "entropy growth after a quench from a product state");
  quench_cmd->add_option("--model", model, "tfi or xxz")->check(CLI::IsMember({"tfi", "xxz"}));
  quench_cmd->add_option("--length", quench.length, "chain length L (<= 12)");
  quench_cmd->add_option("--cut", quench.cut, "number of sites in subsystem M");
  quench_cmd->add_option("--tmax", quench.t_max, "final time");
  quench_cmd->add_option("--steps", quench.steps, "number of time steps");
  quench_cmd->add_option("--coupling", quench.coupling, "J");
  quench_cmd->add_option("--field", quench.field, "h (tfi)");
  quench_cmd->add_option("--delta", quench.anisotropy, "anisotropy (xxz)");
  add_series_options(quench_cmd, quench.analysis);
  quench_cmd->add_option("--json", quench_json, "write the trajectory as JSON");
  quench_cmd->add_flag("--strict", quench_strict, "exit 3 if any series did not converge");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*analyze_cmd) {
      const auto state = espent::parse_state_file(state_path, renormalize);
      if (state.renormalization_factor() != 1.0) {
        std::cerr << "note: amplitudes rescaled by " << state.renormalization_factor() << '\n';
      }
      const auto report = espent::analyze(state, analysis);
      std::cout << espent::report_to_text(report);
      if (!json_path.empty()) write_text(json_path, espent::report_to_json(report));
      if (strict && !report.all_converged()) return kExitNotConverged;
    } else if (*random_cmd) {
      const std::string text = espent::serialize_state(espent::random_haar_state(rand_n, rand_d, seed));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        write_text(out_path, text);
      }
    } else if (*quench_cmd) {
      quench.model = espent::parse_quench_model(model);
      const auto points = espent::quench_trajectory(quench);
      std::cout << espent::trajectory_to_table(points);
      if (!quench_json.empty()) write_text(quench_json, espent::trajectory_to_json(quench, points));
      if (quench_strict) {
        for (const auto& p : points) {
          if (!p.report.all_converged()) return kExitNotConverged;
        }
      }
    }
  } catch (const espent::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
