#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "uwalk/lattice.hpp"
#include "uwalk/worm.hpp"

namespace uwalk {

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = false;
  /// One-line summary of the measured quantities.
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240917;
  /// Multiplies every Monte Carlo sample count (1 = acceptance scale).
  double scale = 1.0;
  std::ostream* log = nullptr;
};

/// Ids of the end-to-end checks, in report order.
const std::vector<std::string>& check_ids();
/// Runs one check by id; throws std::invalid_argument for an unknown id.
CheckResult run_check(const std::string& id, const VerifyOptions& options);
/// "PASS id (seconds s): detail" / "FAIL ...".
std::string format_check(const CheckResult& r);

// Building blocks, exposed for mutation tests.

/// Independent reference for extract_ising_walk: scans the occupied edge
/// list directly instead of walking the configuration's adjacency.
std::vector<Step> reference_ising_walk(const EdgeConfig& config);

struct WormRatioCheck {
  bool passed;
  /// Largest |MC - exact| / stderr over v != origin.
  double worst_sigma;
  std::map<std::uint64_t, std::pair<double, double>> ratios;  // v -> (estimate, stderr)
};
/// Runs the worm at `t_chain` and compares head-visit ratios with the exact
/// lambda(C_v)/lambda(C_0) at `t_exact`.
WormRatioCheck worm_ratio_check(const TorusSpec& spec, double t_chain, double t_exact, std::uint64_t steps,
                                std::uint64_t seed);

}  // namespace uwalk
