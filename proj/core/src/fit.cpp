#include "uwalk/fit.hpp"

#include <algorithm>
#include <cmath>

#include "uwalk/observables.hpp"

namespace uwalk {

PowerLawFit fit_power_law(const ScalingSeries& series) {
  PowerLawFit fit;
  std::vector<double> x, y, sig;
  double min_L = INFINITY;
  for (const auto& p : series) {
    if (!(p.value > 0.0) || !(p.L > 0.0)) {
      fit.warnings.push_back("dropped non-positive estimate at L=" + std::to_string(p.L));
      continue;
    }
    min_L = std::min(min_L, p.L);
    x.push_back(std::log(p.L));
    y.push_back(std::log(p.value));
    sig.push_back(p.stderr_ / p.value);
  }
  if (x.size() < 3) throw InsufficientData("power-law fit needs at least 3 sizes");
  const bool weighted = std::all_of(sig.begin(), sig.end(), [](double s) { return s > 0.0; });
  if (!weighted) fit.warnings.push_back("zero error bars: unweighted fit");

  double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = weighted ? 1.0 / (sig[i] * sig[i]) : 1.0;
    S += w;
    Sx += w * x[i];
    Sy += w * y[i];
    Sxx += w * x[i] * x[i];
    Sxy += w * x[i] * y[i];
  }
  const double det = S * Sxx - Sx * Sx;
  if (!(det > 0.0)) throw InsufficientData("power-law fit needs at least two distinct sizes");
  const double slope = (S * Sxy - Sx * Sy) / det;
  const double icept = (Sxx * Sy - Sx * Sxy) / det;

  double chi2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - icept - slope * x[i];
    chi2 += weighted ? r * r / (sig[i] * sig[i]) : r * r;
  }
  const double dof = static_cast<double>(x.size() - 2);
  // Unweighted: scale the covariance by the residual variance.
  const double scale = weighted ? 1.0 : chi2 / dof;
  fit.exponent = slope;
  fit.exponent_stderr = std::sqrt(scale * S / det);
  fit.amplitude = std::exp(icept);
  fit.amplitude_stderr = fit.amplitude * std::sqrt(scale * Sxx / det);
  fit.chi2_per_dof = weighted ? chi2 / dof : 0.0;
  fit.points = x.size();
  fit.min_L = min_L;
  return fit;
}

std::vector<PowerLawFit> cutoff_sweep(const ScalingSeries& series, std::size_t min_points) {
  ScalingSeries sorted = series;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.L < b.L; });
  std::vector<PowerLawFit> out;
  for (std::size_t drop = 0; sorted.size() - drop >= std::max<std::size_t>(min_points, 3); ++drop)
    out.push_back(fit_power_law(ScalingSeries(sorted.begin() + static_cast<std::ptrdiff_t>(drop), sorted.end())));
  return out;
}

OffsetPowerLawFit fit_power_law_with_offset(const ScalingSeries& series, double b_min, double b_max) {
  if (series.size() < 4) throw InsufficientData("offset power-law fit needs at least 4 sizes");
  for (const auto& p : series)
    if (!(p.stderr_ > 0.0) || !(p.L > 0.0)) throw InsufficientData("offset power-law fit needs positive errors");
  struct Linear {
    double chi2, a, c;
  };
  const auto solve = [&](double b) {
    double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (const auto& p : series) {
      const double w = 1.0 / (p.stderr_ * p.stderr_), x = std::pow(p.L, b);
      S += w;
      Sx += w * x;
      Sy += w * p.value;
      Sxx += w * x * x;
      Sxy += w * x * p.value;
    }
    const double det = S * Sxx - Sx * Sx;
    const double a = (S * Sxy - Sx * Sy) / det, c = (Sxx * Sy - Sx * Sxy) / det;
    double chi2 = 0;
    for (const auto& p : series) {
      const double r = (p.value - a * std::pow(p.L, b) - c) / p.stderr_;
      chi2 += r * r;
    }
    return Linear{chi2, a, c};
  };
  const int n = 6000;
  std::vector<double> grid(n + 1), chi2(n + 1);
  std::size_t best = 0;
  for (int i = 0; i <= n; ++i) {
    grid[i] = b_min + (b_max - b_min) * i / n;
    // b = 0 makes L^b and the offset collinear.
    chi2[i] = std::abs(grid[i]) < 1e-9 ? INFINITY : solve(grid[i]).chi2;
    if (chi2[i] < chi2[best]) best = i;
  }
  OffsetPowerLawFit f;
  const Linear lin = solve(grid[best]);
  f.exponent = grid[best];
  f.amplitude = lin.a;
  f.offset = lin.c;
  f.points = series.size();
  f.chi2_per_dof = lin.chi2 / static_cast<double>(series.size() - 3);
  std::size_t lo = best, hi = best;
  while (lo > 0 && chi2[lo - 1] <= lin.chi2 + 1.0) --lo;
  while (hi < grid.size() - 1 && chi2[hi + 1] <= lin.chi2 + 1.0) ++hi;
  f.exponent_lo = grid[lo];
  f.exponent_hi = grid[hi];
  return f;
}

WeightedMean weighted_mean(const std::vector<double>& values, const std::vector<double>& errors) {
  if (values.empty() || values.size() != errors.size()) throw std::invalid_argument("weighted_mean: size mismatch");
  const bool weighted = std::all_of(errors.begin(), errors.end(), [](double e) { return e > 0.0; });
  double sw = 0, swx = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = weighted ? 1.0 / (errors[i] * errors[i]) : 1.0;
    sw += w;
    swx += w * values[i];
  }
  WeightedMean m{swx / sw, 0.0, 0.0};
  double chi2 = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double r = values[i] - m.value;
    chi2 += weighted ? r * r / (errors[i] * errors[i]) : r * r;
  }
  const double n = static_cast<double>(values.size());
  if (weighted) {
    m.stderr_ = std::sqrt(1.0 / sw);
    m.chi2_per_dof = n > 1 ? chi2 / (n - 1) : 0.0;
  } else {
    m.stderr_ = n > 1 ? std::sqrt(chi2 / (n - 1) / n) : 0.0;
  }
  return m;
}

}  // namespace uwalk
