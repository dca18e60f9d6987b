#include "gmcc/theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gmcc/filters.hpp"
#include "gmcc/math.hpp"
#include "gmcc/quadrature.hpp"

namespace gmcc {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr double kDensityCutoff = 1e-14;

void require_nonsingular_point(double v, double alpha, const char* who) {
  if (v == 0.0 && alpha < 2.0) {
    throw std::domain_error(std::string(who) + ": singular at v = 0 for alpha < 2");
  }
}

}  // namespace

double gmcc_nonlinearity_deriv(double v, const GgdKernel& k) {
  const double alpha = k.alpha();
  const double lambda = k.lambda();
  require_nonsingular_point(v, alpha, "gmcc_nonlinearity_deriv");
  double mag = std::abs(v);
  double pa = std::pow(mag, alpha);
  return std::exp(-lambda * pa) * std::pow(mag, alpha - 2.0) *
         ((alpha - 1.0) - lambda * alpha * pa);
}

double gmcc_nonlinearity_deriv2(double v, const GgdKernel& k) {
  const double alpha = k.alpha();
  const double lambda = k.lambda();
  if (v == 0.0) {
    throw std::domain_error("gmcc_nonlinearity_deriv2: singular at v = 0");
  }
  double mag = std::abs(v);
  double la = lambda * alpha;
  double inner = -la * ((alpha - 1.0) * std::pow(mag, 2.0 * alpha - 3.0) -
                        la * std::pow(mag, 3.0 * alpha - 3.0)) +
                 ((alpha - 1.0) * (alpha - 2.0) * std::pow(mag, alpha - 3.0) -
                  la * (2.0 * alpha - 2.0) * std::pow(mag, 2.0 * alpha - 3.0));
  return std::exp(-lambda * std::pow(mag, alpha)) * sign(v) * inner;
}

double squared_nonlinearity_curvature(double v, const GgdKernel& k) {
  const double alpha = k.alpha();
  const double lambda = k.lambda();
  require_nonsingular_point(v, alpha, "squared_nonlinearity_curvature");
  double mag = std::abs(v);
  double pa = std::pow(mag, alpha);
  double bracket = (alpha - 1.0) * (2.0 * alpha - 3.0) -
                   5.0 * lambda * alpha * (alpha - 1.0) * pa +
                   2.0 * lambda * lambda * alpha * alpha * pa * pa;
  return std::exp(-2.0 * lambda * pa) * std::pow(mag, 2.0 * alpha - 4.0) * bracket;
}

double expect_over_noise(const std::function<double(double)>& g,
                         const NoiseModel& noise, Symmetry symmetry) {
  switch (noise.kind()) {
    case NoiseModel::Kind::binary: {
      double m = noise.param_a();
      return 0.5 * (g(m) + g(-m));
    }
    case NoiseModel::Kind::mixture: {
      double c = noise.mixture_weight();
      double inner = (c < 1.0) ? expect_over_noise(g, noise.inner(), symmetry) : 0.0;
      double outer = (c > 0.0) ? expect_over_noise(g, noise.outer(), symmetry) : 0.0;
      return (1.0 - c) * inner + c * outer;
    }
    default:
      break;
  }

  auto [lo, hi] = noise.support(kDensityCutoff);
  auto integrand = [&](double v) { return g(v) * noise.density(v); };

  if (noise.symmetric_about_zero()) {
    if (symmetry == Symmetry::odd) {
      return 0.0;
    }
    if (symmetry == Symmetry::even) {
      return 2.0 * adaptive_gauss_kronrod(integrand, 0.0, hi, kQuadTol / 2.0);
    }
  }
  if (lo < 0.0 && hi > 0.0) {
    // Split at the origin so singular integrands are graded toward 0.
    return adaptive_gauss_kronrod(integrand, lo, 0.0, kQuadTol / 2.0) +
           adaptive_gauss_kronrod(integrand, 0.0, hi, kQuadTol / 2.0);
  }
  return adaptive_gauss_kronrod(integrand, lo, hi, kQuadTol);
}

EmseResult steady_state_emse(const TheoryInputs& inputs) {
  const GgdKernel& k = inputs.kernel;
  if (!(k.alpha() > 1.0)) {
    throw std::domain_error(
        "steady_state_emse: requires alpha > 1 (E[f'] integrand non-integrable otherwise)");
  }
  if (inputs.noise.mean() != 0.0) {
    throw std::invalid_argument("steady_state_emse: noise must be zero-mean");
  }
  if (!(inputs.trace_rxx > 0.0)) {
    throw std::invalid_argument("steady_state_emse: trace_rxx must be positive");
  }
  if (!(inputs.eta > 0.0)) {
    throw std::invalid_argument("steady_state_emse: eta must be positive");
  }

  EmseResult result;
  result.mean_sq_nonlinearity = expect_over_noise(
      [&](double v) {
        double f = gmcc_nonlinearity(v, k);
        return f * f;
      },
      inputs.noise, Symmetry::even);
  result.mean_slope = expect_over_noise(
      [&](double v) { return gmcc_nonlinearity_deriv(v, k); }, inputs.noise,
      Symmetry::even);
  result.mean_curvature = expect_over_noise(
      [&](double v) { return squared_nonlinearity_curvature(v, k); },
      inputs.noise, Symmetry::even);

  const double eta_tr = inputs.eta * inputs.trace_rxx;
  const double numerator = eta_tr * result.mean_sq_nonlinearity;
  const double full_den = 2.0 * result.mean_slope - eta_tr * result.mean_curvature;
  result.full = numerator / full_den;
  result.full_valid = full_den > 0.0;
  result.simplified = numerator / (2.0 * result.mean_slope);
  return result;
}

double empirical_step_bound(const SampleVector& a_priori_errors,
                            const SampleVector& errors,
                            const SampleVector& input_norms_sq,
                            const GgdKernel& k) {
  if (a_priori_errors.size() != errors.size() ||
      errors.size() != input_norms_sq.size()) {
    throw std::invalid_argument("empirical_step_bound: sample lengths differ");
  }
  if (errors.empty()) {
    throw std::invalid_argument("empirical_step_bound: empty trace");
  }
  const double n = static_cast<double>(errors.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    double f = gmcc_nonlinearity(errors[i], k);
    num += a_priori_errors[i] * f;
    den += input_norms_sq[i] * f * f;
  }
  num /= n;
  den /= n;
  if (den == 0.0) {
    throw std::domain_error("empirical_step_bound: degenerate trace (f(e) vanishes)");
  }
  return 2.0 * num / den;
}

}  // namespace gmcc
