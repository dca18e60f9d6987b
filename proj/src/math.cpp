#include "gmcc/math.hpp"

#include <cmath>
#include <stdexcept>

namespace gmcc {

namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey/Pugh set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double lanczos_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("lanczos_gamma: argument must be positive");
  }
  if (x < 0.5) {
    // Reflection keeps the series argument in its accurate range.
    return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double series = kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) {
    series += kLanczosCoef[i] / (x + static_cast<double>(i));
  }
  double t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * series;
}

double signed_power(double e, double q) {
  double mag = std::abs(e);
  if (q <= 0.0 && mag < 1e-12) {
    return 0.0;
  }
  if (mag == 0.0) {
    return 0.0;
  }
  return std::pow(mag, q) * sign(e);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

double squared_norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) {
    s += v * v;
  }
  return s;
}

}  // namespace gmcc
