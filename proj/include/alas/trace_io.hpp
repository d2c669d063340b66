#pragma once

#include <iosfwd>
#include <string>

#include "alas/driver.hpp"

namespace alas {

/// Version tag written on the first line of every trace file.
inline constexpr const char* kTraceFormat = "alas-trace v1";

/// Column order of the per-iteration table.
inline constexpr const char* kTraceColumns =
    "iter,elapsed_s,step_kind,alpha,ls_iters,sampled_loss,full_loss,grad_norm,lambda_min,sample_fraction,"
    "sample_digest,rayleigh,grad_norm_next,sampled_loss_next,ls_failed,model_stationary,function_stationary";

/// Writes a run as "# key: value" header lines followed by a CSV table.
///
/// Doubles use the shortest representation that parses back to the same
/// value; absent optional fields are empty cells. Evaluation thread counts are
/// not recorded, so traces are byte-identical across parallelism settings.
void write_trace(std::ostream& out, const RunTrace& trace);
std::string trace_to_string(const RunTrace& trace);

/// Inverse of write_trace. Throws ParseError on malformed input.
RunTrace read_trace(std::istream& in);

/// Writes to a temporary file next to `path` and renames it into place.
void save_trace(const std::string& path, const RunTrace& trace);
RunTrace load_trace(const std::string& path);

/// Shortest round-trip text for a double ("nan", "inf", "-inf" for non-finite values).
std::string format_double(double value);
/// Parses text produced by format_double. Throws InvalidInput on failure.
double parse_double(const std::string& text);

}  // namespace alas
