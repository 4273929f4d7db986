#include "uwalk/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace uwalk {

namespace {

using Block = MomentAccumulator::Block;

// Combines two blocks holding the same number n of values.
Block combine_equal(const Block& a, const Block& b, std::uint64_t n) {
  const double delta = b.mean - a.mean;
  return {a.mean + 0.5 * delta, a.m2 + b.m2 + delta * delta * 0.5 * static_cast<double>(n)};
}

std::vector<Block> coarsen(const std::vector<Block>& in, std::uint64_t n) {
  std::vector<Block> out;
  out.reserve(in.size() / 2);
  for (std::size_t i = 0; i + 1 < in.size(); i += 2) out.push_back(combine_equal(in[i], in[i + 1], n));
  return out;
}

struct Group {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
};

void welford(Group& g, double x) {
  g.n += 1.0;
  const double delta = x - g.mean;
  g.mean += delta / g.n;
  g.m2 += delta * (x - g.mean);
}

Group combine(const Group& a, const Group& b) {
  if (a.n == 0.0) return b;
  if (b.n == 0.0) return a;
  Group c;
  c.n = a.n + b.n;
  const double delta = b.mean - a.mean;
  c.mean = a.mean + delta * (b.n / c.n);
  c.m2 = a.m2 + b.m2 + delta * delta * (a.n * b.n / c.n);
  return c;
}

double jackknife_variance(const std::vector<double>& r) {
  const double k = static_cast<double>(r.size());
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / k;
  double s = 0.0;
  for (double x : r) s += (x - mean) * (x - mean);
  return (k - 1.0) / k * s;
}

}  // namespace

// ---------------------------------------------------------------------------

MomentAccumulator::MomentAccumulator(std::size_t max_blocks) : max_blocks_(max_blocks) {
  if (max_blocks_ < 16 || max_blocks_ % 2 != 0)
    throw std::invalid_argument("max_blocks must be even and at least 16");
}

void MomentAccumulator::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);

  ++partial_n_;
  const double pd = x - partial_.mean;
  partial_.mean += pd / static_cast<double>(partial_n_);
  partial_.m2 += pd * (x - partial_.mean);
  if (partial_n_ == block_size_) {
    push_block(partial_);
    partial_ = {};
    partial_n_ = 0;
  }
}

void MomentAccumulator::push_block(Block b) {
  blocks_.push_back(b);
  if (blocks_.size() >= max_blocks_) {
    blocks_ = coarsen(blocks_, block_size_);
    block_size_ *= 2;
  }
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  const Group g = combine({static_cast<double>(count_), mean_, m2_},
                          {static_cast<double>(other.count_), other.mean_, other.m2_});
  count_ += other.count_;
  mean_ = g.mean;
  m2_ = g.m2;

  std::vector<Block> theirs = other.blocks_;
  std::uint64_t their_size = other.block_size_;
  while (block_size_ < their_size) {
    blocks_ = coarsen(blocks_, block_size_);
    block_size_ *= 2;
  }
  while (their_size < block_size_) {
    theirs = coarsen(theirs, their_size);
    their_size *= 2;
  }
  partial_ = {};
  partial_n_ = 0;
  blocks_.insert(blocks_.end(), theirs.begin(), theirs.end());
  while (blocks_.size() >= max_blocks_) {
    blocks_ = coarsen(blocks_, block_size_);
    block_size_ *= 2;
  }
}

double MomentAccumulator::variance() const noexcept {
  if (count_ < 2) return 0.0;
  return std::max(0.0, m2_ / static_cast<double>(count_ - 1));
}

double MomentAccumulator::sd() const noexcept { return std::sqrt(variance()); }

BlockingResult blocking_errors(const MomentAccumulator& acc) {
  constexpr std::size_t kMinBlocks = 8;
  auto blocks = acc.blocks();
  if (blocks.size() < kMinBlocks)
    throw InsufficientData("blocking analysis needs at least 8 blocks, have " + std::to_string(blocks.size()));

  BlockingResult res{};
  res.mean = acc.mean();
  std::vector<double> means;
  means.reserve(blocks.size());
  for (const auto& b : blocks) means.push_back(b.mean);
  std::uint64_t size = acc.block_size();
  while (means.size() >= kMinBlocks) {
    Group g;
    for (double m : means) welford(g, m);
    const double m = static_cast<double>(means.size());
    const double se = std::sqrt(std::max(0.0, g.m2 / (m - 1.0)) / m);
    res.levels.push_back({size, means.size(), se, se / std::sqrt(2.0 * (m - 1.0))});
    std::vector<double> next;
    next.reserve(means.size() / 2);
    for (std::size_t i = 0; i + 1 < means.size(); i += 2) next.push_back(0.5 * (means[i] + means[i + 1]));
    means.swap(next);
    size *= 2;
  }

  // Plateau: the first level whose successor does not exceed it by more
  // than the successor's own error bar.
  std::size_t pick = res.levels.size() - 1;
  for (std::size_t l = 0; l + 1 < res.levels.size(); ++l) {
    if (res.levels[l + 1].stderr_ <= res.levels[l].stderr_ + res.levels[l + 1].stderr_error) {
      pick = l;
      break;
    }
  }
  res.stderr_ = res.levels[pick].stderr_;
  res.block_size = res.levels[pick].block_size;
  const double naive = acc.variance() / static_cast<double>(acc.count());
  res.tau_int = naive > 0.0 ? 0.5 * res.stderr_ * res.stderr_ / naive : 0.5;
  return res;
}

Estimate block_jackknife(const MomentAccumulator& acc, const std::function<double(double, double)>& stat) {
  if (acc.count() < 2) throw InsufficientData("block jackknife needs at least two values");
  Estimate out{stat(acc.mean(), acc.variance()), std::numeric_limits<double>::quiet_NaN()};
  auto blocks = acc.blocks();
  if (blocks.size() < 8) return out;

  const std::size_t ngroups = std::min<std::size_t>(64, blocks.size());
  const std::size_t per = blocks.size() / ngroups;
  const double bn = static_cast<double>(acc.block_size());
  std::vector<Group> groups(ngroups);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::size_t g = std::min(i / per, ngroups - 1);
    groups[g] = combine(groups[g], {bn, blocks[i].mean, blocks[i].m2});
  }
  std::vector<double> r;
  r.reserve(ngroups);
  for (std::size_t k = 0; k < ngroups; ++k) {
    Group rest;
    for (std::size_t g = 0; g < ngroups; ++g)
      if (g != k) rest = combine(rest, groups[g]);
    r.push_back(stat(rest.mean, rest.m2 / (rest.n - 1.0)));
  }
  out.stderr_ = std::sqrt(jackknife_variance(r));
  return out;
}

Estimate moment_ratio(const MomentAccumulator& acc) {
  return block_jackknife(acc, [](double m, double v) { return m / std::sqrt(v); });
}

// ---------------------------------------------------------------------------

void IntHistogram::merge(const IntHistogram& other) {
  for (const auto& [v, c] : other.counts_) counts_[v] += c;
  total_ += other.total_;
}

std::uint64_t IntHistogram::count(std::int64_t value) const {
  auto it = counts_.find(value);
  return it == counts_.end() ? 0 : it->second;
}

double IntHistogram::mean() const {
  if (total_ == 0) throw InsufficientData("empty histogram");
  long double s = 0;
  for (const auto& [v, c] : counts_) s += static_cast<long double>(v) * c;
  return static_cast<double>(s / total_);
}

double IntHistogram::variance() const {
  const long double m = mean();
  long double s = 0;
  for (const auto& [v, c] : counts_) s += (v - m) * (v - m) * c;
  return static_cast<double>(s / total_);
}

double IntHistogram::probability(std::int64_t value) const {
  if (total_ == 0) throw InsufficientData("empty histogram");
  return static_cast<double>(count(value)) / static_cast<double>(total_);
}

double total_variation(const IntHistogram& empirical, const std::map<std::int64_t, double>& exact) {
  std::map<std::int64_t, double> p;
  for (const auto& [v, c] : empirical.counts()) p[v] = static_cast<double>(c) / static_cast<double>(empirical.total());
  return total_variation(p, exact);
}

double total_variation(const std::map<std::int64_t, double>& p, const std::map<std::int64_t, double>& q) {
  double s = 0.0;
  for (const auto& [v, pv] : p) {
    auto it = q.find(v);
    s += std::abs(pv - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [v, qv] : q)
    if (!p.count(v)) s += std::abs(qv);
  return 0.5 * s;
}

// ---------------------------------------------------------------------------

ECDF ECDF::from_values(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  ECDF e;
  for (double x : v) {
    if (e.x_.empty() || x != e.x_.back()) {
      e.x_.push_back(x);
      e.cum_.push_back(e.total_);
    }
    e.total_ += 1.0;
    e.cum_.back() = e.total_;
  }
  return e;
}

ECDF ECDF::from_histogram(const IntHistogram& h) {
  ECDF e;
  for (const auto& [v, c] : h.counts()) {
    if (c == 0) continue;
    e.total_ += static_cast<double>(c);
    e.x_.push_back(static_cast<double>(v));
    e.cum_.push_back(e.total_);
  }
  return e;
}

double ECDF::sample_mean() const {
  if (total_ == 0.0) throw InsufficientData("empty ECDF");
  double s = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    s += x_[i] * (cum_[i] - prev);
    prev = cum_[i];
  }
  return s / total_;
}

double ECDF::sample_sd() const {
  const double m = sample_mean();
  double s = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    s += (x_[i] - m) * (x_[i] - m) * (cum_[i] - prev);
    prev = cum_[i];
  }
  return std::sqrt(s / total_);
}

ECDF ECDF::standardized(double mean, double sd) const {
  if (!(sd > 0.0)) throw std::invalid_argument("standardization needs a positive sd");
  ECDF e = *this;
  for (double& x : e.x_) x = (x - mean) / sd;
  return e;
}

ECDF ECDF::standardized() const { return standardized(sample_mean(), sample_sd()); }

double ECDF::operator()(double x) const {
  if (total_ == 0.0) throw InsufficientData("empty ECDF");
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - x_.begin()) - 1] / total_;
}

double ECDF::ks_distance(const std::function<double(double)>& cdf) const {
  if (total_ == 0.0) throw InsufficientData("empty ECDF");
  double d = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const double f = cdf(x_[i]);
    const double hi = cum_[i] / total_;
    d = std::max({d, std::abs(hi - f), std::abs(prev - f)});
    prev = hi;
  }
  return d;
}

std::vector<std::pair<double, double>> ECDF::steps() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) out.emplace_back(x_[i], cum_[i] / total_);
  return out;
}

std::vector<double> standardize(std::span<const double> values) {
  if (values.empty()) throw InsufficientData("nothing to standardize");
  Group g;
  for (double x : values) welford(g, x);
  const double sd = std::sqrt(g.m2 / g.n);
  if (!(sd > 0.0)) throw std::invalid_argument("standardization needs a positive sd");
  std::vector<double> out;
  out.reserve(values.size());
  for (double x : values) out.push_back((x - g.mean) / sd);
  return out;
}

// ---------------------------------------------------------------------------

bool KeyFilter::accept(const Point& z, int d) const noexcept {
  if (all()) return true;
  if (l1_radius >= 0 && l1_norm(z, d) <= l1_radius) return true;
  if (on_axis) {
    int nonzero = 0;
    for (int a = 0; a < d; ++a) nonzero += z[a] != 0;
    return nonzero <= 1;
  }
  return false;
}

TwoPointHistogram::TwoPointHistogram(int d, TwoPointMode mode, KeyFilter filter, std::uint64_t chunk)
    : d_(d), mode_(mode), filter_(filter), chunk_(std::max<std::uint64_t>(chunk, 1)) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension out of range");
  bits_ = d <= 6 ? std::min(21, 64 / d) : 0;
  offset_ = bits_ ? std::int64_t{1} << (bits_ - 1) : 0;
}

bool TwoPointHistogram::pack(const Point& z, std::uint64_t& key) const noexcept {
  if (!bits_) return false;
  key = 0;
  for (int a = 0; a < d_; ++a) {
    const std::int64_t c = z[a] + offset_;
    if (c < 0 || c >= 2 * offset_) return false;
    key = (key << bits_) | static_cast<std::uint64_t>(c);
  }
  return true;
}

Point TwoPointHistogram::unpack(std::uint64_t key) const noexcept {
  Point z{};
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  for (int a = d_ - 1; a >= 0; --a) {
    z[a] = static_cast<std::int64_t>(key & mask) - offset_;
    key >>= bits_;
  }
  return z;
}

void TwoPointHistogram::begin_sample() {
  bin_ = static_cast<std::size_t>((samples_ / chunk_) % kJackknifeBins);
  ++samples_;
  if (mode_ == TwoPointMode::Visit) norm_[bin_] += 1.0;
}

void TwoPointHistogram::add(const Point& z, double weight) {
  if (!filter_.accept(z, d_)) return;
  std::uint64_t key;
  if (pack(z, key))
    packed_[key][bin_] += weight;
  else
    wide_[z][bin_] += weight;
}

void TwoPointHistogram::add_normalizer(double weight) { norm_[bin_] += weight; }

void TwoPointHistogram::record_endpoint(const Point& z, std::uint64_t length, double weight) {
  begin_sample();
  add(z, weight);
  if (length == 0) add_normalizer(weight);
}

void TwoPointHistogram::record_visits(std::span<const Point> path) {
  begin_sample();
  for (const Point& p : path) add(p);
}

void TwoPointHistogram::merge(const TwoPointHistogram& other) {
  if (other.d_ != d_ || other.mode_ != mode_) throw std::invalid_argument("incompatible two-point histograms");
  for (std::size_t k = 0; k < kJackknifeBins; ++k) norm_[k] += other.norm_[k];
  for (const auto& [key, bins] : other.packed_) {
    auto& mine = packed_[key];
    for (std::size_t k = 0; k < kJackknifeBins; ++k) mine[k] += bins[k];
  }
  for (const auto& [z, bins] : other.wide_) {
    auto& mine = wide_[z];
    for (std::size_t k = 0; k < kJackknifeBins; ++k) mine[k] += bins[k];
  }
  samples_ += other.samples_;
}

double TwoPointHistogram::normalizer() const noexcept { return std::accumulate(norm_.begin(), norm_.end(), 0.0); }

const TwoPointHistogram::Bins* TwoPointHistogram::find(const Point& z) const {
  std::uint64_t key;
  if (pack(z, key)) {
    auto it = packed_.find(key);
    return it == packed_.end() ? nullptr : &it->second;
  }
  auto it = wide_.find(z);
  return it == wide_.end() ? nullptr : &it->second;
}

double TwoPointHistogram::tally(const Point& z) const {
  const Bins* b = find(z);
  return b ? std::accumulate(b->begin(), b->end(), 0.0) : 0.0;
}

Estimate TwoPointHistogram::jackknife(const Bins& num) const {
  const double t = std::accumulate(num.begin(), num.end(), 0.0);
  const double n = normalizer();
  if (!(n > 0.0)) throw InsufficientData("two-point normalizer is zero");
  Estimate e{t / n, 0.0};
  std::vector<double> r;
  r.reserve(kJackknifeBins);
  for (std::size_t k = 0; k < kJackknifeBins; ++k) {
    const double den = n - norm_[k];
    if (!(den > 0.0)) {
      e.stderr_ = std::numeric_limits<double>::infinity();
      return e;
    }
    r.push_back((t - num[k]) / den);
  }
  e.stderr_ = std::sqrt(jackknife_variance(r));
  return e;
}

Estimate TwoPointHistogram::estimate(const Point& z) const {
  const Bins* b = find(z);
  return jackknife(b ? *b : Bins{});
}

Estimate TwoPointHistogram::estimate_mean(std::span<const Point> keys) const {
  if (keys.empty()) throw std::invalid_argument("no keys to average");
  Bins sum{};
  for (const Point& z : keys)
    if (const Bins* b = find(z))
      for (std::size_t k = 0; k < kJackknifeBins; ++k) sum[k] += (*b)[k];
  const double m = static_cast<double>(keys.size());
  for (double& x : sum) x /= m;
  return jackknife(sum);
}

std::vector<Point> TwoPointHistogram::keys() const {
  std::vector<Point> out;
  out.reserve(size());
  for (const auto& kv : packed_) out.push_back(unpack(kv.first));
  for (const auto& kv : wide_) out.push_back(kv.first);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<Point, Estimate> unwrapped_two_point(const TwoPointHistogram& hist) {
  if (hist.mode() != TwoPointMode::Endpoint) throw std::invalid_argument("unwrapped_two_point needs an Endpoint histogram");
  std::map<Point, Estimate> out;
  for (const Point& z : hist.keys()) out.emplace(z, hist.estimate(z));
  return out;
}

std::map<Point, Estimate> rllerw_visit_two_point(const TwoPointHistogram& hist) {
  if (hist.mode() != TwoPointMode::Visit) throw std::invalid_argument("rllerw_visit_two_point needs a Visit histogram");
  std::map<Point, Estimate> out;
  for (const Point& z : hist.keys()) out.emplace(z, hist.estimate(z));
  return out;
}

std::vector<RadialPoint> radial_profile(const TwoPointHistogram& hist, std::int64_t L, RadialMode mode) {
  const int d = hist.dim();
  if (d < 3) throw std::invalid_argument("radial profile requires d >= 3");
  const double scale = std::pow(static_cast<double>(L), d / 4.0);

  std::int64_t kmax = 0;
  for (const Point& z : hist.keys()) {
    int nonzero = 0;
    std::int64_t k = 0;
    for (int a = 0; a < d; ++a)
      if (z[a] != 0) {
        ++nonzero;
        k = std::abs(z[a]);
        if (mode == RadialMode::OnAxis && (a != 0 || z[a] < 0)) nonzero = 2;
      }
    if (nonzero == 1) kmax = std::max(kmax, k);
  }

  std::vector<RadialPoint> out;
  for (std::int64_t k = 1; k <= kmax; ++k) {
    std::vector<Point> keys;
    if (mode == RadialMode::OnAxis) {
      Point z{};
      z[0] = k;
      keys.push_back(z);
    } else {
      for (int a = 0; a < d; ++a)
        for (int s : {1, -1}) {
          Point z{};
          z[a] = s * k;
          keys.push_back(z);
        }
    }
    const Estimate e = hist.estimate_mean(keys);
    const double w = std::pow(static_cast<double>(k), d - 2);
    out.push_back({k, static_cast<double>(k) / scale, w * e.value, w * e.stderr_});
  }
  return out;
}

// ---------------------------------------------------------------------------

WalkObservables::WalkObservables(const TorusSpec& spec, KeyFilter filter, std::uint64_t chunk)
    : spec_(spec),
      winding_moments_(static_cast<std::size_t>(spec.dim())),
      windings_(static_cast<std::size_t>(spec.dim())),
      endpoints_(spec.dim(), TwoPointMode::Endpoint, filter, chunk) {}

void WalkObservables::record(const LatticeWalk& walk) {
  if (!walk.is_torus() || *walk.torus() != spec_) throw std::invalid_argument("walk is not on this torus");
  const auto n = walk.length();
  length_moments_.add(static_cast<double>(n));
  lengths_.add(static_cast<std::int64_t>(n));
  const Point& u = walk.unwrapped_endpoint();
  for (int a = 0; a < spec_.dim(); ++a) {
    const auto w = static_cast<std::int64_t>(std::abs(u[a]) / spec_.period());
    winding_moments_[a].add(static_cast<double>(w));
    windings_[a].add(w);
  }
  endpoints_.record_endpoint(u, n);
  ++torus_endpoints_[spec_.index(walk.endpoint())];
}

void WalkObservables::merge(const WalkObservables& other) {
  if (other.spec_ != spec_) throw std::invalid_argument("incompatible observables");
  length_moments_.merge(other.length_moments_);
  lengths_.merge(other.lengths_);
  for (std::size_t a = 0; a < winding_moments_.size(); ++a) {
    winding_moments_[a].merge(other.winding_moments_[a]);
    windings_[a].merge(other.windings_[a]);
  }
  endpoints_.merge(other.endpoints_);
  for (const auto& [v, c] : other.torus_endpoints_) torus_endpoints_[v] += c;
}

}  // namespace uwalk
