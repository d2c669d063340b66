#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alas/driver.hpp"
#include "alas/mlp.hpp"
#include "alas/teacher.hpp"

namespace alas {

/// Where the training data comes from. Exactly one member is set.
struct ProblemSource {
  std::optional<std::string> dataset_path;  ///< sparse text format or binary cache
  std::optional<TeacherSpec> teacher;
  std::optional<std::string> builtin;  ///< see builtin_problem
};

enum class Algorithm { AlasTheoretical, AlasPractical, Sgd };

/// Cross-product experiment: every algorithm (SGD once per learning rate) at
/// every sampling fraction for every seed.
struct ExperimentConfig {
  ProblemSource source;
  std::optional<MlpSpec> architecture;  ///< required unless the source is a built-in problem
  std::vector<Algorithm> algorithms;
  std::vector<double> learning_rates{1.0, 0.6, 0.3, 0.1};
  std::vector<double> fractions;
  std::vector<std::uint64_t> seeds;
  /// Template for every run; policy, condition, fraction and seed are overwritten per run.
  RunConfig run = RunConfig::practical();
  std::string output_dir = "alas-out";
  /// Independent runs executed concurrently.
  unsigned jobs = 1;

  /// Throws ConfigError when a list is empty, the source is not exactly one
  /// of the three kinds, or an MLP source has no architecture.
  void validate() const;
};

/// Reads a JSON config. Keys:
///   problem: {"dataset": path} | {"teacher": {"preset": "nn1"|"nn2", "layers": [...],
///            "samples": N, "seed": s, "spread": 3, "spread_is_variance": false}} | {"builtin": name}
///   architecture: "2-1-1"
///   algorithms: ["alas-theoretical", "alas-practical", "sgd"]
///   learning_rates, fractions, seeds: lists
///   sampling: "epoch_partition" | "with_replacement"
///   max_iterations, wall_clock_seconds, consecutive_stationary, full_metrics_every,
///   epsilon, eta, theta, max_backtracks, acceptance, threads, jobs, output_dir
/// Throws ConfigError on unknown keys or bad values.
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

struct SummaryRow {
  std::string architecture;
  std::string algorithm;  ///< "ALAS-practical", "SGD(0.1)", ...
  double fraction = 0.0;
  std::uint64_t seed = 0;
  double min_loss = 0.0;
  double median_loss = 0.0;  ///< over the trailing window
  std::size_t iterations = 0;
  std::string termination;
};

/// Per-run statistics derived only from a trace.
struct RunSummary {
  SummaryRow row;
  std::map<StepKind, std::size_t> step_counts;
  std::map<int, std::size_t> backtrack_histogram;  ///< j_k -> count
};

/// Summarizes one trace. The loss series is every recorded full loss followed
/// by the final full loss; the trailing window covers the last
/// `window_fraction` of the run's wall-clock time when the run was timed, and
/// the last ceil(window_fraction * count) points otherwise.
/// Throws InvalidInput for an empty trace, a trace without full losses or a
/// window fraction outside (0,1].
RunSummary summarize(const RunTrace& trace, double window_fraction = 0.2);

struct ExperimentResult {
  std::vector<std::string> trace_files;
  std::vector<RunSummary> summaries;
};

/// Runs the cross-product, writes one trace CSV per run plus summary.csv,
/// steps.csv and line_search.csv under the output directory.
/// The problem and architecture are validated before any run starts.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string algorithm_label(const RunTrace& trace);

void write_summary_csv(const std::string& path, const std::vector<RunSummary>& summaries);
void write_step_distribution_csv(const std::string& path, const std::vector<RunSummary>& summaries);
void write_line_search_histogram_csv(const std::string& path, const std::vector<RunSummary>& summaries);

}  // namespace alas
