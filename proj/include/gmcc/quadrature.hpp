#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace gmcc {

/// Thrown when adaptive quadrature cannot reach the requested tolerance;
/// carries the best estimate achieved and its error bound.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Globally adaptive quadrature with the embedded Gauss(7)/Kronrod(15) rule
/// pair: the interval with the largest error estimate is bisected until the
/// summed error falls below `abs_tol` or `max_intervals` is reached (then
/// PrecisionError). 15 integrand evaluations per interval, all at interior
/// nodes, so integrable endpoint singularities (|v|^(alpha-2), alpha > 1)
/// are handled by the progressively graded subdivision toward the endpoint.
double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a,
                              double b, double abs_tol, int max_intervals = 2000);

}  // namespace gmcc
