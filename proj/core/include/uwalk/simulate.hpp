#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uwalk/config.hpp"
#include "uwalk/csv.hpp"
#include "uwalk/observables.hpp"

namespace uwalk {

struct ChainDiagnostics {
  std::uint64_t chain_index = 0;
  std::uint64_t steps = 0;
  double acceptance = 1.0;
  /// Mean walk length over the first and second half of the measurements.
  double first_half_length = 0.0;
  double second_half_length = 0.0;
};

struct SizeResult {
  std::int64_t L;
  WalkObservables observables;
  /// Visit-mode two-point histogram (RLRW, RLLERW).
  std::optional<TwoPointHistogram> visits;
  std::vector<ChainDiagnostics> chains;
};

struct RunResult {
  RunConfig config;
  std::vector<SizeResult> sizes;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

/// Runs one chain: `chain_index` selects the random stream. Chains are
/// independent; merging their results in chain order is deterministic.
SizeResult run_chain(const RunConfig& config, std::int64_t L, std::uint64_t chain_index);

/// All sizes, all chains (one thread per chain, up to the hardware limit),
/// merged in chain order. Chain c of size index l uses stream l*chains + c.
RunResult run_simulation(const RunConfig& config, std::ostream* log = nullptr);

struct RunTables {
  std::vector<ResultRow> moments;
  std::vector<ResultRow> winding;
  std::vector<ResultRow> two_point;
  std::vector<ResultRow> ecdf;
  std::vector<ResultRow> length_histogram;
};

RunTables tabulate(const RunResult& run);

/// "(x,y,...)" key for a displacement.
std::string point_key(const Point& z, int d);
/// Inverse of point_key; returns the dimension through `d`.
Point parse_point_key(const std::string& key, int& d);

/// Writes moments.csv, winding.csv, two_point.csv, ecdf.csv,
/// length_hist.csv and summary.json into `dir` (created if needed). On a
/// write failure writes manifest.txt listing the complete files and throws.
void write_run(const RunResult& run, const std::string& dir);

/// Identifier of the source tree this binary was built from.
const char* build_id();

}  // namespace uwalk
