#include "alas/trace_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace alas {

namespace {

template <typename T>
std::string optional_cell(const std::optional<T>& value) {
  if (!value) return {};
  if constexpr (std::is_same_v<T, double>) return format_double(*value);
  else if constexpr (std::is_same_v<T, bool>) return *value ? "1" : "0";
  else return std::to_string(*value);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(line);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
  return buf;
}

std::uint64_t parse_u64(const std::string& text, int base, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("malformed integer '" + text + "'", line);
  return value;
}

bool parse_bool(const std::string& text, std::size_t line) {
  if (text == "1") return true;
  if (text == "0") return false;
  throw ParseError("malformed flag '" + text + "'", line);
}

double parse_number(const std::string& text, std::size_t line) {
  try {
    return parse_double(text);
  } catch (const InvalidInput&) {
    throw ParseError("malformed number '" + text + "'", line);
  }
}

template <typename F>
auto parse_field(const std::string& key, std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidInput& e) {
    throw ParseError(key + ": " + e.what(), line);
  }
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw InvalidInput("malformed number '" + text + "'");
  return value;
}

void write_trace(std::ostream& out, const RunTrace& trace) {
  const RunConfig& c = trace.config;
  out << "# " << kTraceFormat << '\n';
  out << "# algorithm: " << trace.algorithm << '\n';
  out << "# problem: " << trace.problem << '\n';
  out << "# policy: " << to_string(c.policy) << '\n';
  out << "# epsilon: " << format_double(c.epsilon) << '\n';
  out << "# theta: " << format_double(c.line_search.theta) << '\n';
  out << "# eta: " << format_double(c.line_search.eta) << '\n';
  out << "# condition: " << to_string(c.line_search.condition) << '\n';
  out << "# max_backtracks: " << c.line_search.max_backtracks << '\n';
  out << "# sampling: " << to_string(c.sampling.mode) << '\n';
  out << "# fraction: " << format_double(c.sampling.fraction) << '\n';
  out << "# acceptance: " << to_string(c.acceptance) << '\n';
  out << "# consecutive_stationary: " << c.stopping.consecutive_stationary << '\n';
  out << "# max_iterations: " << c.stopping.max_iterations << '\n';
  out << "# wall_clock_seconds: " << format_double(c.stopping.wall_clock_seconds) << '\n';
  out << "# stop_on_line_search_exhaustion: " << (c.stopping.stop_on_line_search_exhaustion ? 1 : 0) << '\n';
  out << "# seed: " << c.seed << '\n';
  out << "# full_metrics_every: " << c.full_metrics_every << '\n';
  out << "# track_function_stationarity: " << (c.track_function_stationarity ? 1 : 0) << '\n';
  out << "# divergence_threshold: " << format_double(c.divergence_threshold) << '\n';
  out << "# learning_rate: " << optional_cell(trace.learning_rate) << '\n';
  out << "# termination: " << to_string(trace.termination) << '\n';
  out << "# final_full_loss: " << optional_cell(trace.final_full_loss) << '\n';
  out << "# final_point:";
  for (Eigen::Index i = 0; i < trace.final_point.size(); ++i) out << ' ' << format_double(trace.final_point(i));
  out << '\n';

  out << kTraceColumns << '\n';
  for (const IterationRecord& r : trace.records) {
    out << r.k << ',' << format_double(r.elapsed_seconds) << ',' << to_string(r.kind) << ','
        << format_double(r.alpha) << ',' << optional_cell(r.backtracks) << ',' << format_double(r.sampled_loss) << ','
        << optional_cell(r.full_loss) << ',' << format_double(r.grad_norm) << ',' << optional_cell(r.lambda_min)
        << ',' << format_double(r.sample_fraction) << ',' << hex64(r.sample_digest) << ','
        << optional_cell(r.rayleigh) << ',' << optional_cell(r.grad_norm_next) << ','
        << optional_cell(r.sampled_loss_next) << ',' << (r.line_search_failed ? 1 : 0) << ','
        << (r.model_stationary ? 1 : 0) << ',' << optional_cell(r.function_stationary) << '\n';
  }
}

std::string trace_to_string(const RunTrace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

RunTrace read_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != std::string("# ") + kTraceFormat)
    throw ParseError("not an alas trace (expected '" + std::string(kTraceFormat) + "')", 1);
  ++line_no;

  std::map<std::string, std::string> header;
  while (true) {
    if (!std::getline(in, line)) throw ParseError("missing column header", line_no + 1);
    ++line_no;
    if (line.rfind("# ", 0) != 0) break;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("malformed header line", line_no);
    std::string value = line.substr(colon + 1);
    if (!value.empty() && value.front() == ' ') value.erase(0, 1);
    header[line.substr(2, colon - 2)] = value;
  }
  if (line != kTraceColumns) throw ParseError("unexpected column header", line_no);

  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = header.find(key);
    if (it == header.end()) throw ParseError("missing header key '" + key + "'", line_no);
    return it->second;
  };

  RunTrace trace;
  RunConfig& c = trace.config;
  trace.algorithm = get("algorithm");
  trace.problem = get("problem");
  c.policy = parse_field("policy", line_no, [&] { return policy_from_string(get("policy")); });
  c.epsilon = parse_number(get("epsilon"), line_no);
  c.line_search.theta = parse_number(get("theta"), line_no);
  c.line_search.eta = parse_number(get("eta"), line_no);
  c.line_search.condition =
      parse_field("condition", line_no, [&] { return decrease_condition_from_string(get("condition")); });
  c.line_search.max_backtracks = static_cast<int>(parse_u64(get("max_backtracks"), 10, line_no));
  c.sampling.mode = parse_field("sampling", line_no, [&] { return sampling_mode_from_string(get("sampling")); });
  c.sampling.fraction = parse_number(get("fraction"), line_no);
  c.acceptance = parse_field("acceptance", line_no, [&] { return acceptance_from_string(get("acceptance")); });
  c.stopping.consecutive_stationary = parse_u64(get("consecutive_stationary"), 10, line_no);
  c.stopping.max_iterations = parse_u64(get("max_iterations"), 10, line_no);
  c.stopping.wall_clock_seconds = parse_number(get("wall_clock_seconds"), line_no);
  c.stopping.stop_on_line_search_exhaustion = parse_bool(get("stop_on_line_search_exhaustion"), line_no);
  c.seed = parse_u64(get("seed"), 10, line_no);
  c.full_metrics_every = parse_u64(get("full_metrics_every"), 10, line_no);
  c.track_function_stationarity = parse_bool(get("track_function_stationarity"), line_no);
  c.divergence_threshold = parse_number(get("divergence_threshold"), line_no);
  if (!get("learning_rate").empty()) trace.learning_rate = parse_number(get("learning_rate"), line_no);
  trace.termination =
      parse_field("termination", line_no, [&] { return termination_from_string(get("termination")); });
  if (!get("final_full_loss").empty()) trace.final_full_loss = parse_number(get("final_full_loss"), line_no);
  {
    std::istringstream point(get("final_point"));
    std::vector<double> values;
    for (std::string token; point >> token;) values.push_back(parse_number(token, line_no));
    trace.final_point = Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != 17) throw ParseError("expected 17 columns", line_no);

    auto opt_double = [&](const std::string& cell) -> std::optional<double> {
      if (cell.empty()) return std::nullopt;
      return parse_number(cell, line_no);
    };

    IterationRecord r;
    r.k = parse_u64(cells[0], 10, line_no);
    r.elapsed_seconds = parse_number(cells[1], line_no);
    r.kind = parse_field("step_kind", line_no, [&] { return step_kind_from_string(cells[2]); });
    r.alpha = parse_number(cells[3], line_no);
    if (!cells[4].empty()) r.backtracks = static_cast<int>(parse_u64(cells[4], 10, line_no));
    r.sampled_loss = parse_number(cells[5], line_no);
    r.full_loss = opt_double(cells[6]);
    r.grad_norm = parse_number(cells[7], line_no);
    r.lambda_min = opt_double(cells[8]);
    r.sample_fraction = parse_number(cells[9], line_no);
    r.sample_digest = parse_u64(cells[10], 16, line_no);
    r.rayleigh = opt_double(cells[11]);
    r.grad_norm_next = opt_double(cells[12]);
    r.sampled_loss_next = opt_double(cells[13]);
    r.line_search_failed = parse_bool(cells[14], line_no);
    r.model_stationary = parse_bool(cells[15], line_no);
    if (!cells[16].empty()) r.function_stationary = parse_bool(cells[16], line_no);
    if (r.k != trace.records.size()) throw ParseError("iteration records out of order", line_no);
    trace.records.push_back(r);
  }
  return trace;
}

void save_trace(const std::string& path, const RunTrace& trace) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + tmp + "'");
    write_trace(out, trace);
    if (!out) throw ConfigError("failed writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

RunTrace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open trace '" + path + "'");
  return read_trace(in);
}

}  // namespace alas
