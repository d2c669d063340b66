// Command-line front end: run experiments, summarize traces, print the
// theory report, generate teacher datasets and check derivatives.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "alas/dataset.hpp"
#include "alas/experiment.hpp"
#include "alas/fd_check.hpp"
#include "alas/test_functions.hpp"
#include "alas/theory_report.hpp"
#include "alas/trace_io.hpp"

namespace {

void print_summaries(const std::vector<alas::RunSummary>& summaries) {
  std::cout << std::left << std::setw(12) << "arch" << std::setw(22) << "algorithm" << std::setw(10) << "fraction"
            << std::setw(8) << "seed" << std::setw(16) << "min loss" << std::setw(16) << "median loss" << "iter\n";
  for (const auto& s : summaries) {
    const auto& r = s.row;
    std::cout << std::setw(12) << r.architecture << std::setw(22) << r.algorithm << std::setw(10)
              << alas::format_double(r.fraction) << std::setw(8) << r.seed << std::setw(16) << std::setprecision(6)
              << r.min_loss << std::setw(16) << r.median_loss << r.iterations << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subsampled line-search optimization toolkit"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a JSON config");
  std::string config_path;
  std::string output_dir;
  std::size_t max_iterations = 0;
  double wall_clock = -1.0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> fractions;
  unsigned jobs = 0;
  run_cmd->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("-o,--output-dir", output_dir, "Output directory (overrides config and ALAS_OUTPUT_DIR)");
  run_cmd->add_option("--max-iterations", max_iterations, "Iteration budget per run");
  run_cmd->add_option("--wall-clock", wall_clock, "Wall-clock budget per run in seconds");
  run_cmd->add_option("--seeds", seeds, "Seeds");
  run_cmd->add_option("--fractions", fractions, "Sampling fractions");
  run_cmd->add_option("-j,--jobs", jobs, "Concurrent runs");

  // summarize
  auto* sum_cmd = app.add_subcommand("summarize", "Summarize trace files");
  std::vector<std::string> trace_paths;
  double window = 0.2;
  std::string summary_dir;
  sum_cmd->add_option("traces", trace_paths, "Trace CSV files")->required()->check(CLI::ExistingFile);
  sum_cmd->add_option("-w,--window", window, "Trailing window fraction for the median loss")
      ->check(CLI::Range(0.0, 1.0));
  sum_cmd->add_option("-o,--output-dir", summary_dir, "Also write summary/steps/line_search CSVs here");

  // theory
  auto* theory_cmd = app.add_subcommand("theory", "Evaluate step-length constants, sample sizes and complexity bounds");
  alas::theory::TheoryInputs inputs;
  bool as_json = false;
  theory_cmd->add_option("--L", inputs.constants.L, "Gradient Lipschitz constant");
  theory_cmd->add_option("--L-H", inputs.constants.L_H, "Hessian Lipschitz constant");
  theory_cmd->add_option("--U-g", inputs.constants.U_g, "Gradient norm bound");
  theory_cmd->add_option("--U-H", inputs.constants.U_H, "Hessian norm bound");
  theory_cmd->add_option("--f-up", inputs.constants.f_up, "Component value bound");
  theory_cmd->add_option("--f-low", inputs.constants.f_low, "Objective lower bound");
  theory_cmd->add_option("--f0", inputs.constants.f0, "Objective at the starting point");
  theory_cmd->add_option("--epsilon", inputs.epsilon, "Tolerance");
  theory_cmd->add_option("--p", inputs.p, "Accuracy probability");
  theory_cmd->add_option("--kappa-g", inputs.kappa_g, "Gradient accuracy ratio");
  theory_cmd->add_option("--kappa-H", inputs.kappa_H, "Hessian accuracy ratio");
  theory_cmd->add_option("--J", inputs.J, "Consecutive stationary iterations minus one");
  theory_cmd->add_option("--N", inputs.N, "Number of components");
  theory_cmd->add_option("--theta", inputs.theta, "Backtracking factor");
  theory_cmd->add_option("--eta", inputs.eta, "Decrease constant");
  theory_cmd->add_flag("--json", as_json, "Machine-readable output");

  // gen-data
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a teacher-network dataset");
  std::string preset = "nn1";
  std::vector<std::size_t> layers;
  std::size_t samples = 50000;
  std::uint64_t data_seed = 0;
  double spread = 3.0;
  bool spread_is_variance = false;
  std::string out_path;
  std::string format = "cache";
  gen_cmd->add_option("--preset", preset, "nn1 or nn2")->check(CLI::IsMember({"nn1", "nn2"}));
  gen_cmd->add_option("--layers", layers, "Teacher layer widths, overriding the preset");
  gen_cmd->add_option("--samples", samples, "Number of samples");
  gen_cmd->add_option("--seed", data_seed, "Seed");
  gen_cmd->add_option("--spread", spread, "Weight distribution spread");
  gen_cmd->add_flag("--spread-is-variance", spread_is_variance, "Interpret --spread as a variance");
  gen_cmd->add_option("-o,--out", out_path, "Output file")->required();
  gen_cmd->add_option("--format", format, "cache or libsvm")->check(CLI::IsMember({"cache", "libsvm"}));

  // check
  auto* check_cmd = app.add_subcommand("check", "Compare analytic derivatives with finite differences");
  std::string dataset_path;
  std::string builtin;
  std::string architecture;
  std::uint64_t check_seed = 0;
  double h = 1e-5;
  check_cmd->add_option("--dataset", dataset_path, "Dataset (sparse text or cache)");
  check_cmd->add_option("--builtin", builtin, "Built-in problem name");
  check_cmd->add_option("--architecture", architecture, "MLP architecture, e.g. 2-1-1");
  check_cmd->add_option("--seed", check_seed, "Seed for the evaluation point");
  check_cmd->add_option("--step", h, "Finite-difference step");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      alas::ExperimentConfig config = alas::load_experiment_config(config_path);
      if (const char* env = std::getenv("ALAS_OUTPUT_DIR"); env != nullptr && *env != '\0') config.output_dir = env;
      if (!output_dir.empty()) config.output_dir = output_dir;
      if (max_iterations > 0) config.run.stopping.max_iterations = max_iterations;
      if (wall_clock >= 0.0) config.run.stopping.wall_clock_seconds = wall_clock;
      if (!seeds.empty()) config.seeds = seeds;
      if (!fractions.empty()) config.fractions = fractions;
      if (jobs > 0) config.jobs = jobs;
      const alas::ExperimentResult result = alas::run_experiment(config);
      print_summaries(result.summaries);
      std::cout << "wrote " << result.trace_files.size() << " traces to " << config.output_dir << '\n';
    } else if (*sum_cmd) {
      std::vector<alas::RunSummary> summaries;
      for (const auto& path : trace_paths) summaries.push_back(alas::summarize(alas::load_trace(path), window));
      print_summaries(summaries);
      for (const auto& s : summaries) {
        std::cout << s.row.algorithm << " f=" << alas::format_double(s.row.fraction) << " seed=" << s.row.seed
                  << " steps:";
        for (const auto& [kind, count] : s.step_counts) std::cout << ' ' << alas::to_string(kind) << '=' << count;
        std::cout << " | ls:";
        for (const auto& [j, count] : s.backtrack_histogram) std::cout << ' ' << j << '=' << count;
        std::cout << '\n';
      }
      if (!summary_dir.empty()) {
        std::filesystem::create_directories(summary_dir);
        const std::filesystem::path dir(summary_dir);
        alas::write_summary_csv((dir / "summary.csv").string(), summaries);
        alas::write_step_distribution_csv((dir / "steps.csv").string(), summaries);
        alas::write_line_search_histogram_csv((dir / "line_search.csv").string(), summaries);
      }
    } else if (*theory_cmd) {
      const auto report = alas::theory::make_theory_report(inputs);
      std::cout << (as_json ? alas::theory::render_json(report) + "\n" : alas::theory::render_text(report));
    } else if (*gen_cmd) {
      alas::TeacherSpec spec = preset == "nn2" ? alas::TeacherSpec::nn2(samples, data_seed)
                                               : alas::TeacherSpec::nn1(samples, data_seed);
      if (!layers.empty()) spec.architecture.layers = layers;
      spec.weight_spread = spread;
      spec.spread_is_variance = spread_is_variance;
      const alas::Dataset data = alas::teacher_generate(spec);
      if (format == "cache") {
        alas::save_dataset_cache(out_path, data);
      } else {
        std::ofstream out(out_path);
        alas::write_libsvm(out, data);
      }
      std::cout << "wrote " << data.size() << " samples (" << data.provenance << ") to " << out_path << '\n';
    } else if (*check_cmd) {
      std::unique_ptr<alas::FiniteSumProblem> problem;
      alas::Vector x;
      if (!builtin.empty()) {
        problem = alas::builtin_problem(builtin);
        x = alas::builtin_start(builtin);
      } else {
        if (dataset_path.empty() || architecture.empty())
          throw alas::ConfigError("check: give --builtin, or --dataset with --architecture");
        auto data = std::make_shared<alas::Dataset>(alas::load_dataset(dataset_path));
        const alas::MlpSpec spec = alas::MlpSpec::parse(architecture);
        problem = std::make_unique<alas::MlpProblem>(spec, data);
        x = alas::mlp_initial_parameters(spec, check_seed);
      }
      const auto errors = alas::finite_difference_check(*problem, x, h);
      std::cout << "max gradient error: " << alas::format_double(errors.gradient) << '\n'
                << "max hessian error:  " << alas::format_double(errors.hessian) << '\n';
      return errors.gradient <= 1e-5 && errors.hessian <= 1e-4 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
