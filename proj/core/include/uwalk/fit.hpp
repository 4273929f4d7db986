#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace uwalk {

struct ScalingPoint {
  double L;
  double value;
  double stderr_;
};
using ScalingSeries = std::vector<ScalingPoint>;

struct PowerLawFit {
  double exponent = 0.0;
  double exponent_stderr = 0.0;
  double amplitude = 0.0;
  double amplitude_stderr = 0.0;
  double chi2_per_dof = 0.0;
  std::size_t points = 0;
  double min_L = 0.0;
  std::vector<std::string> warnings;
};

/// Weighted least squares of log(value) = log(amplitude) + exponent*log(L),
/// with log-space errors stderr/value. Non-positive values are dropped with
/// a warning; if any retained error is zero the fit is unweighted and the
/// parameter errors come from the residual scatter. Needs >= 3 points.
PowerLawFit fit_power_law(const ScalingSeries& series);

/// Fits with the smallest sizes removed one at a time, while >= min_points
/// remain. Entry i drops the i smallest sizes.
std::vector<PowerLawFit> cutoff_sweep(const ScalingSeries& series, std::size_t min_points = 3);

struct OffsetPowerLawFit {
  double exponent = 0.0;
  /// Range of exponents with chi2 within 1 of the minimum (profile likelihood).
  double exponent_lo = 0.0;
  double exponent_hi = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  double chi2_per_dof = 0.0;
  std::size_t points = 0;
};

/// value = amplitude * L^exponent + offset, weighted by stderr. The exponent
/// is profiled on a grid over [b_min, b_max]; amplitude and offset are
/// linear. Needs >= 4 points with positive errors.
OffsetPowerLawFit fit_power_law_with_offset(const ScalingSeries& series, double b_min = -3.0, double b_max = 3.0);

struct WeightedMean {
  double value;
  double stderr_;
  double chi2_per_dof;
};

/// Inverse-variance weighted mean (plain mean when any error is zero).
WeightedMean weighted_mean(const std::vector<double>& values, const std::vector<double>& errors);

}  // namespace uwalk
