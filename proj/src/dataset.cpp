#include "alas/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

#include "alas/errors.hpp"

namespace alas {

namespace {

constexpr char kMagic[8] = {'A', 'L', 'A', 'S', 'D', 'A', 'T', 'A'};
constexpr std::uint32_t kCacheVersion = 1;

struct SparseRow {
  double label = 0.0;
  std::vector<std::pair<std::size_t, double>> entries;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view token, std::size_t line, const char* what) {
  // from_chars rejects a leading '+', which the format allows on labels.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw ParseError(std::string("malformed ") + what + " '" + std::string(token) + "'", line);
  return value;
}

std::size_t parse_index(std::string_view token, std::size_t line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw ParseError("malformed feature index '" + std::string(token) + "'", line);
  if (value < 1) throw ParseError("feature index must be >= 1", line);
  return static_cast<std::size_t>(value);
}

template <typename T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw ParseError("truncated dataset cache", 0);
  return value;
}

}  // namespace

void Dataset::validate() const {
  if (features.rows() == 0 || features.cols() == 0) throw InvalidInput("dataset: empty");
  if (labels.size() != features.rows()) throw InvalidInput("dataset: label count does not match rows");
  if (!features.allFinite() || !labels.allFinite()) throw InvalidInput("dataset: non-finite entry");
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.provenance != b.provenance) return false;
  if (a.features.rows() != b.features.rows() || a.features.cols() != b.features.cols()) return false;
  if (a.labels.size() != b.labels.size()) return false;
  // Bitwise comparison so that round trips are checked exactly.
  return std::memcmp(a.features.data(), b.features.data(), sizeof(double) * a.features.size()) == 0 &&
         std::memcmp(a.labels.data(), b.labels.data(), sizeof(double) * a.labels.size()) == 0;
}

Dataset libsvm_parse(std::istream& in, std::optional<std::size_t> dimension, std::string provenance) {
  std::vector<SparseRow> rows;
  std::size_t max_index = 0;
  std::string raw;
  std::size_t line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    SparseRow row;
    std::size_t pos = 0;
    auto next_token = [&]() -> std::string_view {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
      return line.substr(start, pos - start);
    };

    row.label = parse_double(next_token(), line_no, "label");
    std::size_t previous = 0;
    for (std::string_view token = next_token(); !token.empty(); token = next_token()) {
      const auto colon = token.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected index:value, got '" + std::string(token) + "'", line_no);
      const std::size_t index = parse_index(token.substr(0, colon), line_no);
      const double value = parse_double(token.substr(colon + 1), line_no, "feature value");
      if (index <= previous) throw ParseError("feature indices must be strictly increasing", line_no);
      if (dimension && index > *dimension)
        throw ParseError("feature index " + std::to_string(index) + " exceeds dimension", line_no);
      if (!std::isfinite(value)) throw ParseError("non-finite feature value", line_no);
      previous = index;
      max_index = std::max(max_index, index);
      row.entries.emplace_back(index, value);
    }
    if (!std::isfinite(row.label)) throw ParseError("non-finite label", line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no samples", line_no);

  const std::size_t d = dimension.value_or(max_index);
  if (d == 0) throw ParseError("dataset has no features", line_no);

  Dataset data;
  data.provenance = std::move(provenance);
  data.features = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  data.labels.resize(static_cast<Eigen::Index>(rows.size()));

  bool binary01 = true;
  bool has_zero = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double y = rows[i].label;
    binary01 = binary01 && (y == 0.0 || y == 1.0);
    has_zero = has_zero || y == 0.0;
    data.labels(static_cast<Eigen::Index>(i)) = y;
    for (const auto& [index, value] : rows[i].entries)
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(index - 1)) = value;
  }
  if (binary01 && has_zero) data.labels = (2.0 * data.labels.array() - 1.0).matrix();
  return data;
}

Dataset libsvm_load(const std::string& path, std::optional<std::size_t> dimension) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset '" + path + "'");
  return libsvm_parse(in, dimension, "libsvm:" + path);
}

void write_libsvm(std::ostream& out, const Dataset& data) {
  data.validate();
  auto number = [](double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
  };
  for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
    out << number(data.labels(i));
    for (Eigen::Index j = 0; j < data.features.cols(); ++j)
      if (data.features(i, j) != 0.0) out << ' ' << (j + 1) << ':' << number(data.features(i, j));
    out << '\n';
  }
  if (!out) throw ConfigError("failed to write dataset");
}

void write_dataset_cache(std::ostream& out, const Dataset& data) {
  data.validate();
  out.write(kMagic, sizeof(kMagic));
  write_raw(out, kCacheVersion);
  write_raw(out, static_cast<std::uint64_t>(data.size()));
  write_raw(out, static_cast<std::uint64_t>(data.dimension()));
  write_raw(out, static_cast<std::uint64_t>(data.provenance.size()));
  out.write(data.provenance.data(), static_cast<std::streamsize>(data.provenance.size()));
  out.write(reinterpret_cast<const char*>(data.labels.data()),
            static_cast<std::streamsize>(sizeof(double) * data.labels.size()));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = data.features;
  out.write(reinterpret_cast<const char*>(rows.data()), static_cast<std::streamsize>(sizeof(double) * rows.size()));
  if (!out) throw ConfigError("failed to write dataset cache");
}

Dataset read_dataset_cache(std::istream& in) {
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw ParseError("not a dataset cache", 0);
  const auto version = read_raw<std::uint32_t>(in);
  if (version != kCacheVersion) throw ParseError("unsupported dataset cache version " + std::to_string(version), 0);
  const auto n = read_raw<std::uint64_t>(in);
  const auto d = read_raw<std::uint64_t>(in);
  const auto name_length = read_raw<std::uint64_t>(in);
  if (name_length > (1u << 20)) throw ParseError("corrupt dataset cache header", 0);

  Dataset data;
  data.provenance.resize(name_length);
  in.read(data.provenance.data(), static_cast<std::streamsize>(name_length));
  data.labels.resize(static_cast<Eigen::Index>(n));
  in.read(reinterpret_cast<char*>(data.labels.data()), static_cast<std::streamsize>(sizeof(double) * n));
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(static_cast<Eigen::Index>(n),
                                                                             static_cast<Eigen::Index>(d));
  in.read(reinterpret_cast<char*>(rows.data()), static_cast<std::streamsize>(sizeof(double) * n * d));
  if (!in) throw ParseError("truncated dataset cache", 0);
  data.features = rows;
  data.validate();
  return data;
}

void save_dataset_cache(const std::string& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  write_dataset_cache(out, data);
}

Dataset load_dataset_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open dataset '" + path + "'");
  return read_dataset_cache(in);
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open dataset '" + path + "'");
  char magic[sizeof(kMagic)] = {};
  in.read(magic, sizeof(magic));
  const bool is_cache = in.gcount() == sizeof(magic) && std::memcmp(magic, kMagic, sizeof(kMagic)) == 0;
  in.clear();
  in.seekg(0);
  if (is_cache) return read_dataset_cache(in);
  return libsvm_parse(in, std::nullopt, "libsvm:" + path);
}

}  // namespace alas
