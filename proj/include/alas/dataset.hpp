#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "alas/types.hpp"

namespace alas {

/// Dense supervised dataset: one row of `features` per sample.
struct Dataset {
  Matrix features;  ///< N x d
  Vector labels;    ///< N
  std::string provenance;

  std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t dimension() const { return static_cast<std::size_t>(features.cols()); }

  /// Throws InvalidInput for empty data, mismatched sizes or non-finite entries.
  void validate() const;

  friend bool operator==(const Dataset& a, const Dataset& b);
};

/// Reads the sparse "label index:value ..." text format (1-based, strictly
/// increasing indices). Blank lines and lines starting with '#' are skipped.
///
/// If `dimension` is absent the largest index seen is used. When every label
/// is 0 or 1 (and at least one is 0) the labels are mapped 0 -> -1, 1 -> +1.
/// Throws ParseError with the 1-based line number on malformed input.
Dataset libsvm_parse(std::istream& in, std::optional<std::size_t> dimension = std::nullopt,
                     std::string provenance = "libsvm");

Dataset libsvm_load(const std::string& path, std::optional<std::size_t> dimension = std::nullopt);

/// Writes the sparse text format (zero features omitted) with shortest
/// round-trip number formatting, so parsing it back with the same dimension
/// reproduces the features exactly.
void write_libsvm(std::ostream& out, const Dataset& data);

/// Binary cache: magic "ALASDATA", u32 version, u64 N, u64 d, u64 provenance
/// length, provenance bytes, N labels, then N*d features row-major. Numbers are
/// stored in the host byte order (little endian on supported platforms).
void write_dataset_cache(std::ostream& out, const Dataset& data);
Dataset read_dataset_cache(std::istream& in);

void save_dataset_cache(const std::string& path, const Dataset& data);
Dataset load_dataset_cache(const std::string& path);

/// Loads either format, choosing by content (the cache magic) rather than the file name.
Dataset load_dataset(const std::string& path);

}  // namespace alas
