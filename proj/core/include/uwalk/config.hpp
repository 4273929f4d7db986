#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uwalk/lattice.hpp"
#include "uwalk/length_law.hpp"

namespace uwalk {

/// Bad configuration text or values; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { Saw, IsingWorm, Rlrw, Rllerw };

std::string to_string(Model m);
Model parse_model(const std::string& s);

/// Critical points shipped as defaults, with their quoted uncertainties.
struct CriticalPoint {
  const char* model;
  int d;
  double value;
  double uncertainty;
};
/// tanh(beta_c) for Ising (d = 5, and d = 2 exactly sqrt(2) - 1), J_c for SAW
/// (d = 2, 5, 6).
const std::vector<CriticalPoint>& critical_points();
std::optional<CriticalPoint> default_critical_point(Model m, int d);

/// Run configuration. Text form is one `key = value` per line; `#` starts a
/// comment; unknown keys, duplicates and malformed values are errors.
struct RunConfig {
  Model model = Model::Rlrw;
  int dimension = 3;
  std::vector<std::int64_t> sizes{8};
  /// J for SAW; 0 selects the shipped critical point.
  double fugacity = 0.0;
  /// tanh(beta) for the worm; 0 selects the shipped critical point.
  double tanh_beta = 0.0;
  /// Length law for RLRW/RLLERW ("complete_graph" or a LengthLaw string).
  std::string length_law = "complete_graph";
  bool lifted = false;
  double burn_in_sweeps = 100.0;
  /// Chain steps between measurements, in sweeps of L^d steps.
  double measure_interval_sweeps = 1.0;
  std::uint64_t measurements_per_chain = 1000;
  unsigned chains = 1;
  std::uint64_t seed = 1;
  /// Two-point displacements kept: l1 ball of this radius (negative: all)
  /// plus the coordinate axes when two_point_axes is set.
  std::int64_t two_point_l1_radius = 4;
  bool two_point_axes = true;
  bool write_two_point = true;
  bool write_ecdf = true;
  std::string output_dir = "uwalk_out";

  /// Parses and (unless `check` is false) validates.
  static RunConfig parse(const std::string& text, bool check = true);
  static RunConfig load(const std::string& path, bool check = true);
  /// Applies one `key=value` assignment.
  void set(const std::string& key, const std::string& value);
  /// Canonical text; parse(serialize()) reproduces the config exactly.
  std::string serialize() const;
  /// Throws ConfigError on out-of-range values.
  void validate() const;

  double coupling() const;
  LengthLaw law_for(const TorusSpec& spec) const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace uwalk
