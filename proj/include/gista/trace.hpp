#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gista {

/// One solver iteration as seen from the outside. err_to_ref is filled only
/// when the solve was given a reference solution to measure against.
struct TraceRecord {
  int iter = 0;
  double objective = 0.0;
  double gap = 0.0;
  double zeta_accepted = 0.0;
  int backtracks = 0;
  double nnz_frac = 0.0;
  std::optional<double> err_to_ref;

  bool operator==(const TraceRecord&) const = default;
};

enum class TraceFormat { Csv, JsonLines };

/// Write one row/object per record, fields in declaration order. Doubles are
/// serialized with 17 significant digits so a parse round-trips bit-exactly.
/// A non-finite gap (duality gap unavailable) becomes "inf" in CSV and null
/// in JSON lines. Output goes to a temp file renamed into place on success.
void export_trace(const std::vector<TraceRecord>& trace, TraceFormat format,
                  const std::string& path);

/// Inverse of export_trace; used by tooling and the round-trip tests.
std::vector<TraceRecord> parse_trace(TraceFormat format, const std::string& path);

}  // namespace gista
