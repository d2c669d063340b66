#include "alas/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "alas/dataset.hpp"
#include "alas/test_functions.hpp"
#include "alas/trace_io.hpp"

namespace alas {

namespace {

using nlohmann::json;

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "alas-theoretical") return Algorithm::AlasTheoretical;
  if (name == "alas-practical") return Algorithm::AlasPractical;
  if (name == "sgd") return Algorithm::Sgd;
  throw ConfigError("unknown algorithm '" + name + "'");
}

TeacherSpec teacher_from_json(const json& j) {
  static const std::set<std::string> keys{"preset", "layers", "samples", "seed", "spread", "spread_is_variance"};
  for (const auto& [key, _] : j.items())
    if (!keys.count(key)) throw ConfigError("unknown teacher key '" + key + "'");

  const std::size_t samples = j.value("samples", std::size_t{50000});
  const std::uint64_t seed = j.value("seed", std::uint64_t{0});
  const std::string preset = j.value("preset", std::string("nn1"));
  TeacherSpec spec;
  if (preset == "nn1") spec = TeacherSpec::nn1(samples, seed);
  else if (preset == "nn2") spec = TeacherSpec::nn2(samples, seed);
  else throw ConfigError("unknown teacher preset '" + preset + "'");
  if (j.contains("layers")) spec.architecture.layers = j.at("layers").get<std::vector<std::size_t>>();
  spec.weight_spread = j.value("spread", spec.weight_spread);
  spec.spread_is_variance = j.value("spread_is_variance", spec.spread_is_variance);
  return spec;
}

struct LoadedProblem {
  std::shared_ptr<const FiniteSumProblem> problem;
  std::string label;
};

LoadedProblem load_problem(const ExperimentConfig& config) {
  const ProblemSource& src = config.source;
  if (src.builtin) return {std::shared_ptr<const FiniteSumProblem>(builtin_problem(*src.builtin)), *src.builtin};

  std::shared_ptr<Dataset> data;
  if (src.dataset_path) data = std::make_shared<Dataset>(load_dataset(*src.dataset_path));
  else data = std::make_shared<Dataset>(teacher_generate(*src.teacher));
  try {
    auto problem = std::make_shared<MlpProblem>(*config.architecture, data);
    return {problem, config.architecture->label()};
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
}

std::string fraction_tag(double fraction) { return format_double(fraction); }

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + tmp + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void ExperimentConfig::validate() const {
  const int kinds = int(source.dataset_path.has_value()) + int(source.teacher.has_value()) +
                    int(source.builtin.has_value());
  if (kinds != 1) throw ConfigError("experiment: exactly one problem source is required");
  if (!source.builtin && !architecture) throw ConfigError("experiment: an MLP architecture is required");
  if (architecture) {
    try {
      architecture->validate();
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
  }
  if (algorithms.empty()) throw ConfigError("experiment: at least one algorithm is required");
  if (fractions.empty()) throw ConfigError("experiment: at least one sampling fraction is required");
  if (seeds.empty()) throw ConfigError("experiment: at least one seed is required");
  for (double f : fractions)
    if (!(f > 0.0 && f <= 1.0)) throw ConfigError("experiment: fractions must lie in (0,1]");
  if (std::find(algorithms.begin(), algorithms.end(), Algorithm::Sgd) != algorithms.end()) {
    if (learning_rates.empty()) throw ConfigError("experiment: SGD needs at least one learning rate");
    for (double lr : learning_rates)
      if (!(lr > 0.0)) throw ConfigError("experiment: learning rates must be positive");
  }
  try {
    run.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  static const std::set<std::string> keys{
      "problem", "architecture", "algorithms", "learning_rates", "fractions", "seeds", "sampling",
      "max_iterations", "wall_clock_seconds", "consecutive_stationary", "full_metrics_every", "epsilon", "eta",
      "theta", "max_backtracks", "acceptance", "threads", "jobs", "output_dir"};
  for (const auto& [key, _] : j.items())
    if (!keys.count(key)) throw ConfigError("config: unknown key '" + key + "'");

  ExperimentConfig config;
  try {
    const json& problem = j.at("problem");
    if (problem.contains("dataset")) config.source.dataset_path = problem.at("dataset").get<std::string>();
    if (problem.contains("teacher")) config.source.teacher = teacher_from_json(problem.at("teacher"));
    if (problem.contains("builtin")) config.source.builtin = problem.at("builtin").get<std::string>();
    if (j.contains("architecture")) config.architecture = MlpSpec::parse(j.at("architecture").get<std::string>());
    for (const auto& name : j.at("algorithms").get<std::vector<std::string>>())
      config.algorithms.push_back(algorithm_from_string(name));
    if (j.contains("learning_rates")) config.learning_rates = j.at("learning_rates").get<std::vector<double>>();
    config.fractions = j.at("fractions").get<std::vector<double>>();
    config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();

    RunConfig& run = config.run;
    if (j.contains("sampling")) run.sampling.mode = sampling_mode_from_string(j.at("sampling").get<std::string>());
    else run.sampling.mode = SamplingMode::EpochPartition;
    run.stopping.max_iterations = j.value("max_iterations", run.stopping.max_iterations);
    run.stopping.wall_clock_seconds = j.value("wall_clock_seconds", run.stopping.wall_clock_seconds);
    // Experiments run on budgets unless a stationarity stop is asked for.
    run.stopping.consecutive_stationary = j.value("consecutive_stationary", std::size_t{1000000000});
    run.full_metrics_every = j.value("full_metrics_every", std::size_t{10});
    run.epsilon = j.value("epsilon", run.epsilon);
    run.line_search.eta = j.value("eta", run.line_search.eta);
    run.line_search.theta = j.value("theta", run.line_search.theta);
    run.line_search.max_backtracks = j.value("max_backtracks", run.line_search.max_backtracks);
    if (j.contains("acceptance")) run.acceptance = acceptance_from_string(j.at("acceptance").get<std::string>());
    run.eval.threads = j.value("threads", 1u);
    config.jobs = j.value("jobs", 1u);
    config.output_dir = j.value("output_dir", config.output_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

std::string algorithm_label(const RunTrace& trace) {
  if (trace.learning_rate) return "SGD(" + format_double(*trace.learning_rate) + ")";
  return trace.config.policy == Policy::Theoretical ? "ALAS-theoretical" : "ALAS-practical";
}

RunSummary summarize(const RunTrace& trace, double window_fraction) {
  if (trace.records.empty()) throw InvalidInput("summarize: empty trace");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw InvalidInput("summarize: window fraction must lie in (0,1]");

  RunSummary out;
  std::vector<std::pair<double, double>> series;  // (time, loss)
  for (const IterationRecord& r : trace.records) {
    ++out.step_counts[r.kind];
    if (r.backtracks) ++out.backtrack_histogram[*r.backtracks];
    if (r.full_loss) series.emplace_back(r.elapsed_seconds, *r.full_loss);
  }
  if (trace.final_full_loss) series.emplace_back(trace.records.back().elapsed_seconds, *trace.final_full_loss);
  if (series.empty()) throw InvalidInput("summarize: trace has no full losses");

  std::vector<double> window;
  if (trace.config.stopping.wall_clock_seconds > 0.0) {
    const double start = (1.0 - window_fraction) * series.back().first;
    for (const auto& [t, loss] : series)
      if (t >= start) window.push_back(loss);
  } else {
    const auto count = static_cast<std::size_t>(
        std::ceil(window_fraction * static_cast<double>(series.size()) - 1e-9));
    const std::size_t keep = std::clamp<std::size_t>(count, 1, series.size());
    for (std::size_t i = series.size() - keep; i < series.size(); ++i) window.push_back(series[i].second);
  }

  SummaryRow& row = out.row;
  row.architecture = trace.problem;
  row.algorithm = algorithm_label(trace);
  row.fraction = trace.config.sampling.fraction;
  row.seed = trace.config.seed;
  row.min_loss = std::min_element(series.begin(), series.end(), [](const auto& a, const auto& b) {
                   return a.second < b.second;
                 })->second;
  row.median_loss = median(std::move(window));
  row.iterations = trace.records.size();
  row.termination = std::string(to_string(trace.termination));
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const LoadedProblem loaded = load_problem(config);
  std::filesystem::create_directories(config.output_dir);

  struct Job {
    Algorithm algorithm;
    std::optional<double> learning_rate;
    double fraction;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Algorithm algorithm : config.algorithms)
    for (double fraction : config.fractions)
      for (std::uint64_t seed : config.seeds) {
        if (algorithm == Algorithm::Sgd) {
          for (double lr : config.learning_rates) jobs.push_back({algorithm, lr, fraction, seed});
        } else {
          jobs.push_back({algorithm, std::nullopt, fraction, seed});
        }
      }

  auto execute = [&](const Job& job) -> std::pair<std::string, RunSummary> {
    RunConfig run = config.run;
    run.sampling.fraction = job.fraction;
    run.seed = job.seed;
    if (job.algorithm == Algorithm::AlasTheoretical) {
      run.policy = Policy::Theoretical;
      run.line_search.condition = DecreaseCondition::Cubic;
    } else {
      run.policy = Policy::Practical;
      run.line_search.condition = DecreaseCondition::Quadratic;
    }
    const Vector x0 = config.source.builtin ? builtin_start(*config.source.builtin)
                                            : mlp_initial_parameters(*config.architecture, job.seed);
    RunTrace trace;
    try {
      trace = job.algorithm == Algorithm::Sgd ? sgd_run(*loaded.problem, x0, *job.learning_rate, run)
                                              : alas::run(*loaded.problem, x0, run);
    } catch (const RunAborted& aborted) {
      trace = aborted.partial();
    }
    trace.problem = loaded.label;
    if (!trace.final_full_loss) {
      // Summaries need at least the terminal loss; a diverged run scores +inf.
      try {
        trace.final_full_loss = evaluate_full(*loaded.problem, trace.final_point, Order::Value, run.eval).value;
      } catch (const NumericFailure&) {
        trace.final_full_loss = std::numeric_limits<double>::infinity();
      }
    }

    std::string name = job.algorithm == Algorithm::Sgd ? "sgd-lr" + format_double(*job.learning_rate)
                       : job.algorithm == Algorithm::AlasTheoretical ? "alas-theoretical"
                                                                     : "alas-practical";
    name += "_f" + fraction_tag(job.fraction) + "_s" + std::to_string(job.seed) + ".csv";
    const std::string path = (std::filesystem::path(config.output_dir) / name).string();
    save_trace(path, trace);
    return {path, summarize(trace)};
  };

  ExperimentResult result;
  const std::size_t parallel = std::max(1u, config.jobs);
  for (std::size_t start = 0; start < jobs.size(); start += parallel) {
    std::vector<std::future<std::pair<std::string, RunSummary>>> batch;
    for (std::size_t k = start; k < std::min(jobs.size(), start + parallel); ++k)
      batch.push_back(std::async(parallel == 1 ? std::launch::deferred : std::launch::async, execute, jobs[k]));
    for (auto& f : batch) {
      auto [path, summary] = f.get();
      result.trace_files.push_back(std::move(path));
      result.summaries.push_back(std::move(summary));
    }
  }

  const std::filesystem::path dir(config.output_dir);
  write_summary_csv((dir / "summary.csv").string(), result.summaries);
  write_step_distribution_csv((dir / "steps.csv").string(), result.summaries);
  write_line_search_histogram_csv((dir / "line_search.csv").string(), result.summaries);
  return result;
}

void write_summary_csv(const std::string& path, const std::vector<RunSummary>& summaries) {
  std::ostringstream out;
  out << "architecture,algorithm,fraction,seed,min_loss,median_loss,iterations,termination\n";
  for (const RunSummary& s : summaries) {
    const SummaryRow& r = s.row;
    out << r.architecture << ',' << r.algorithm << ',' << format_double(r.fraction) << ',' << r.seed << ','
        << format_double(r.min_loss) << ',' << format_double(r.median_loss) << ',' << r.iterations << ','
        << r.termination << '\n';
  }
  write_atomically(path, out.str());
}

void write_step_distribution_csv(const std::string& path, const std::vector<RunSummary>& summaries) {
  std::ostringstream out;
  out << "architecture,algorithm,fraction,seed,step_kind,count\n";
  for (const RunSummary& s : summaries)
    for (const auto& [kind, count] : s.step_counts)
      out << s.row.architecture << ',' << s.row.algorithm << ',' << format_double(s.row.fraction) << ','
          << s.row.seed << ',' << to_string(kind) << ',' << count << '\n';
  write_atomically(path, out.str());
}

void write_line_search_histogram_csv(const std::string& path, const std::vector<RunSummary>& summaries) {
  std::ostringstream out;
  out << "architecture,algorithm,fraction,seed,ls_iters,count\n";
  for (const RunSummary& s : summaries)
    for (const auto& [j, count] : s.backtrack_histogram)
      out << s.row.architecture << ',' << s.row.algorithm << ',' << format_double(s.row.fraction) << ','
          << s.row.seed << ',' << j << ',' << count << '\n';
  write_atomically(path, out.str());
}

}  // namespace alas
