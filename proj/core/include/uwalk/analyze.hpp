#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uwalk/csv.hpp"
#include "uwalk/theory.hpp"

namespace uwalk {

/// Tables of one completed run directory.
struct RunTablesIn {
  std::string source;
  std::string model;
  int dimension = 0;
  std::vector<ResultRow> moments;
  std::vector<ResultRow> winding;
  std::vector<ResultRow> two_point;
};

/// Reads summary.json, moments.csv, winding.csv and (if present)
/// two_point.csv. Throws std::runtime_error naming a missing file or column.
RunTablesIn load_run_dir(const std::string& dir);

struct AnalyzeOptions {
  /// When set, profiles.csv also carries h_d at each xi.
  std::optional<CollapseParams> collapse;
  /// Least-squares fit of (alpha, beta, gamma) to the on-axis profile.
  bool fit_collapse = false;
};

struct AnalysisReport {
  /// Fit and summary rows (observable, L = smallest size used, key, ...).
  std::vector<ResultRow> fits;
  /// On-axis radial profile rows: key "xi=..;k=..".
  std::vector<ResultRow> profiles;
  std::vector<std::string> notices;
};

/// Groups runs by (model, d) and produces: power-law fits with cutoff
/// sweeps of the mean length, length variance and axis-averaged mean
/// winding; the mean/sd ratio against phi; the winding collapse constant
/// E(R) / L^{max(0, d/4 - 1)}; and the scaled on-axis two-point profile.
AnalysisReport analyze(const std::vector<RunTablesIn>& runs, const AnalyzeOptions& options = {});

/// Writes fits.csv, profiles.csv and notices.txt.
void write_analysis(const AnalysisReport& report, const std::string& dir);

}  // namespace uwalk
