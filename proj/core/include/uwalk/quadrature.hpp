#pragma once

#include <functional>
#include <vector>

namespace uwalk {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. The integrand is never
/// evaluated at the endpoints, so integrable endpoint singularities are fine.
/// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-12, int max_intervals = 4000);

/// Same, over consecutive pieces [p_0, p_1], ..., [p_{k-1}, p_k] with the
/// tolerance shared between them.
QuadratureResult integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& points,
                                  double abs_tol = 1e-12, double rel_tol = 1e-12, int max_intervals = 4000);

}  // namespace uwalk
