#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "uwalk/lattice.hpp"

namespace uwalk {

/// Raised when an estimator does not have enough data to report a value.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// ---------------------------------------------------------------------------
// Moments with blocking

/// Streaming mean/variance with a bounded list of equal-size block moments.
///
/// When the number of full blocks reaches `max_blocks`, adjacent blocks are
/// merged pairwise and the block size doubles, so memory stays bounded and
/// block sizes are always powers of two.
class MomentAccumulator {
 public:
  struct Block {
    double mean = 0.0;
    double m2 = 0.0;  // sum of squared deviations within the block
  };

  explicit MomentAccumulator(std::size_t max_blocks = 4096);

  void add(double x);
  /// Appends `other` as if its stream followed this one. Block lists are
  /// concatenated after coarsening to a common block size; values still in
  /// other's partial block enter the global moments only.
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance (0 for fewer than two values).
  double variance() const noexcept;
  double sd() const noexcept;

  std::uint64_t block_size() const noexcept { return block_size_; }
  std::span<const Block> blocks() const noexcept { return blocks_; }

 private:
  void push_block(Block b);

  std::size_t max_blocks_;
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  std::uint64_t block_size_ = 1;
  std::uint64_t partial_n_ = 0;
  Block partial_{};
  std::vector<Block> blocks_;
};

struct BlockingLevel {
  std::uint64_t block_size;
  std::size_t blocks;
  double stderr_;
  double stderr_error;
};

struct BlockingResult {
  double mean;
  double stderr_;
  /// 0.5 * (blocked variance of the mean) / (naive variance of the mean).
  double tau_int;
  std::uint64_t block_size;
  std::vector<BlockingLevel> levels;
};

/// Standard error from block means at the first level where doubling the
/// block size no longer raises the estimate beyond its own error bar.
/// Throws InsufficientData with fewer than 8 blocks.
BlockingResult blocking_errors(const MomentAccumulator& acc);

/// stat(mean, variance) with a jackknife error over up to 64 groups of
/// consecutive blocks (NaN error with fewer than 8 blocks).
Estimate block_jackknife(const MomentAccumulator& acc, const std::function<double(double, double)>& stat);

/// mean / sd with a grouped-block jackknife error.
Estimate moment_ratio(const MomentAccumulator& acc);

// ---------------------------------------------------------------------------
// Exact integer tallies

class IntHistogram {
 public:
  void add(std::int64_t value, std::uint64_t weight = 1) {
    counts_[value] += weight;
    total_ += weight;
  }
  void merge(const IntHistogram& other);

  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t count(std::int64_t value) const;
  const std::map<std::int64_t, std::uint64_t>& counts() const noexcept { return counts_; }
  double mean() const;
  /// Population variance.
  double variance() const;
  double probability(std::int64_t value) const;

  friend bool operator==(const IntHistogram&, const IntHistogram&) = default;

 private:
  std::map<std::int64_t, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Total-variation distance between an empirical histogram and a
/// probability table indexed by value.
double total_variation(const IntHistogram& empirical, const std::map<std::int64_t, double>& exact);
double total_variation(const std::map<std::int64_t, double>& p, const std::map<std::int64_t, double>& q);

// ---------------------------------------------------------------------------
// ECDF

/// Empirical distribution function of weighted sample values.
class ECDF {
 public:
  ECDF() = default;
  static ECDF from_values(std::span<const double> values);
  static ECDF from_histogram(const IntHistogram& h);

  /// Affine image (x - mean) / sd of the sample.
  ECDF standardized(double mean, double sd) const;
  /// Standardizes by the sample's own mean and standard deviation.
  ECDF standardized() const;

  double operator()(double x) const;
  double total_weight() const noexcept { return total_; }
  double sample_mean() const;
  double sample_sd() const;

  /// sup_x |F_n(x) - F(x)| for a continuous CDF F.
  double ks_distance(const std::function<double(double)>& cdf) const;

  /// Distinct support points with cumulative fractions (right-continuous).
  std::vector<std::pair<double, double>> steps() const;

 private:
  std::vector<double> x_;   // sorted distinct values
  std::vector<double> cum_; // cumulative weight up to and including x_[i]
  double total_ = 0.0;
};

/// (x - mean)/sd using the sample mean and (population) standard deviation.
std::vector<double> standardize(std::span<const double> values);

// ---------------------------------------------------------------------------
// Two-point histograms

enum class TwoPointMode {
  Endpoint,  // tally the unwrapped endpoint; normalizer counts zero-length samples
  Visit,     // tally every visited site; normalizer counts samples
};

/// Restricts which displacements are stored.
struct KeyFilter {
  /// Store z with ||z||_1 <= l1_radius (negative: no l1 restriction).
  std::int64_t l1_radius = -1;
  /// Additionally store every z on a coordinate axis.
  bool on_axis = false;

  bool all() const noexcept { return l1_radius < 0 && !on_axis; }
  bool accept(const Point& z, int d) const noexcept;
};

inline constexpr std::size_t kJackknifeBins = 16;

/// Weighted displacement tallies split over kJackknifeBins bins. Sample i
/// goes to bin (i / chunk) mod kJackknifeBins.
class TwoPointHistogram {
 public:
  using Bins = std::array<double, kJackknifeBins>;

  TwoPointHistogram(int d, TwoPointMode mode, KeyFilter filter = {}, std::uint64_t chunk = 1);

  int dim() const noexcept { return d_; }
  TwoPointMode mode() const noexcept { return mode_; }
  const KeyFilter& filter() const noexcept { return filter_; }

  /// Endpoint mode: one sample with the given unwrapped endpoint and length.
  void record_endpoint(const Point& z, std::uint64_t length, double weight = 1.0);
  /// Visit mode: one sample visiting each point of `path` (with multiplicity).
  void record_visits(std::span<const Point> path);

  /// Low-level interface: open a sample, then add tallies to it.
  void begin_sample();
  void add(const Point& z, double weight = 1.0);
  void add_normalizer(double weight = 1.0);

  void merge(const TwoPointHistogram& other);

  std::uint64_t samples() const noexcept { return samples_; }
  double normalizer() const noexcept;
  double tally(const Point& z) const;
  /// tally(z) / normalizer with a jackknife error over bins. Throws
  /// InsufficientData when the normalizer is zero.
  Estimate estimate(const Point& z) const;
  /// Estimate of the sum of tallies over `keys` divided by keys.size().
  Estimate estimate_mean(std::span<const Point> keys) const;

  /// Every stored displacement, in lexicographic order.
  std::vector<Point> keys() const;
  std::size_t size() const noexcept { return packed_.size() + wide_.size(); }

 private:
  bool pack(const Point& z, std::uint64_t& key) const noexcept;
  Point unpack(std::uint64_t key) const noexcept;
  const Bins* find(const Point& z) const;
  Estimate jackknife(const Bins& num) const;

  int d_;
  TwoPointMode mode_;
  KeyFilter filter_;
  std::uint64_t chunk_;
  int bits_;
  std::int64_t offset_;
  std::uint64_t samples_ = 0;
  std::size_t bin_ = 0;
  Bins norm_{};
  std::unordered_map<std::uint64_t, Bins> packed_;
  std::map<Point, Bins> wide_;
};

/// g~(z) for every stored displacement (Endpoint mode).
std::map<Point, Estimate> unwrapped_two_point(const TwoPointHistogram& hist);
/// P[W^{-1}(L) visits z] for every stored displacement (Visit mode).
std::map<Point, Estimate> rllerw_visit_two_point(const TwoPointHistogram& hist);

enum class RadialMode {
  OnAxis,        // z = k e_1, k >= 1
  AxesAveraged,  // average over the 2d points +-k e_i
};

struct RadialPoint {
  std::int64_t k;  // ||z||
  double xi;       // ||z|| / L^{d/4}
  double value;    // ||z||^{d-2} g~(z)
  double stderr_;
};

/// Scaled two-point profile ||z||^{d-2} g~(z) against xi = ||z|| / L^{d/4}
/// along the coordinate axes. Requires d >= 3.
std::vector<RadialPoint> radial_profile(const TwoPointHistogram& hist, std::int64_t L,
                                        RadialMode mode = RadialMode::OnAxis);

// ---------------------------------------------------------------------------
// Per-walk observables

/// Length, winding and endpoint accumulators for a stream of torus walks.
class WalkObservables {
 public:
  WalkObservables(const TorusSpec& spec, KeyFilter filter = {}, std::uint64_t chunk = 1);

  /// O(d) update from a torus walk (plus one hash insert per histogram).
  void record(const LatticeWalk& walk);
  void merge(const WalkObservables& other);

  const TorusSpec& spec() const noexcept { return spec_; }
  const MomentAccumulator& length_moments() const noexcept { return length_moments_; }
  const IntHistogram& lengths() const noexcept { return lengths_; }
  const MomentAccumulator& winding_moments(int axis) const { return winding_moments_.at(axis); }
  const IntHistogram& windings(int axis) const { return windings_.at(axis); }
  const TwoPointHistogram& endpoints() const noexcept { return endpoints_; }
  /// Torus endpoint tallies keyed by vertex index.
  const std::map<std::uint64_t, std::uint64_t>& torus_endpoints() const noexcept { return torus_endpoints_; }

 private:
  TorusSpec spec_;
  MomentAccumulator length_moments_;
  IntHistogram lengths_;
  std::vector<MomentAccumulator> winding_moments_;
  std::vector<IntHistogram> windings_;
  TwoPointHistogram endpoints_;
  std::map<std::uint64_t, std::uint64_t> torus_endpoints_;
};

}  // namespace uwalk
