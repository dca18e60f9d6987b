#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace gmcc {

/// Gamma function on the positive real axis via the Lanczos approximation
/// (g = 7, 9-term coefficient set of Godfrey/Pugh, the same set used by the
/// GSL and numerous numerics libraries). Relative accuracy is better than
/// 1e-13 on [0.05, 20], which covers every 1/alpha this library evaluates.
/// Self-contained so that kernel normalization constants are bit-identical
/// across platforms regardless of the host libm.
double lanczos_gamma(double x);

/// |e|^q * sign(e), with the convention that the result is 0 whenever
/// |e| < 1e-12 and q <= 0 (the q <= 0 powers diverge or jump at the origin;
/// the filter update treats such samples as a zero increment).
double signed_power(double e, double q);

/// -1, 0, +1.
inline double sign(double x) { return (x > 0.0) - (x < 0.0); }

/// Neumaier-compensated accumulator. Used wherever Monte Carlo aggregates
/// must not depend on summation round-off drift.
class CompensatedSum {
 public:
  void add(double value) {
    double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);

}  // namespace gmcc
