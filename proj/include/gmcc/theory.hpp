#pragma once

#include <functional>

#include "gmcc/kernel.hpp"
#include "gmcc/noise.hpp"
#include "gmcc/sample_vector.hpp"

namespace gmcc {

/// Derivative f'(v) of the GMCC error nonlinearity:
///
///   exp(-lambda|v|^alpha) |v|^(alpha-2) ((alpha-1) - lambda*alpha*|v|^alpha)
///
/// Throws std::domain_error at v = 0 when alpha < 2 (singular there).
double gmcc_nonlinearity_deriv(double v, const GgdKernel& k);

/// Second derivative f''(v) of the nonlinearity; odd in v. Throws
/// std::domain_error at v = 0.
double gmcc_nonlinearity_deriv2(double v, const GgdKernel& k);

/// Curvature term of the squared nonlinearity, f(v) f''(v) + f'(v)^2
/// (equal to half the second derivative of f^2), in closed form:
///
///   exp(-2 lambda|v|^alpha) |v|^(2 alpha - 4)
///     [(alpha-1)(2 alpha-3) - 5 lambda alpha (alpha-1)|v|^alpha
///      + 2 lambda^2 alpha^2 |v|^(2 alpha)]
///
/// This is the step-size-dependent correction in the steady-state EMSE
/// denominator. Throws std::domain_error at v = 0 when alpha < 2.
double squared_nonlinearity_curvature(double v, const GgdKernel& k);

/// Hint for expect_over_noise: declaring the integrand even halves the
/// quadrature domain for symmetric noise, declaring it odd makes the
/// expectation exactly zero there.
enum class Symmetry { none, even, odd };

/// E[g(v)] over the noise distribution: adaptive Gauss-Kronrod quadrature
/// against the density (absolute tolerance 1e-10, support truncated where
/// the density falls below 1e-14, domain split at 0 for the integrable
/// singularities), the exact point-mass sum for binary noise, and the
/// c-weighted sum of component expectations for mixtures. Throws
/// PrecisionError if the quadrature cannot reach tolerance.
double expect_over_noise(const std::function<double(double)>& g,
                         const NoiseModel& noise,
                         Symmetry symmetry = Symmetry::none);

/// Inputs of the steady-state EMSE prediction.
struct TheoryInputs {
  GgdKernel kernel;
  double eta = 0.0;        // step-size
  double trace_rxx = 0.0;  // trace of the input autocorrelation matrix
  NoiseModel noise;
};

/// Steady-state EMSE prediction with diagnostics. `full` keeps the
/// step-size-dependent curvature term in the denominator and is flagged
/// invalid when that denominator is non-positive (theory outside its
/// validity region); `simplified` drops the term (small step-size form).
struct EmseResult {
  double full = 0.0;
  double simplified = 0.0;
  bool full_valid = false;
  // Diagnostic expectation terms.
  double mean_sq_nonlinearity = 0.0;  // E[f(v)^2]
  double mean_slope = 0.0;            // E[f'(v)]
  double mean_curvature = 0.0;        // E[f f'' + f'^2]
};

/// Analytic steady-state EMSE of the GMCC algorithm:
///
///   full       = eta Tr E[f^2(v)] / (2 E[f'(v)] - eta Tr E[f f'' + f'^2])
///   simplified = eta Tr E[f^2(v)] / (2 E[f'(v)])
///
/// Requires alpha > 1 (the E[f'] integrand is non-integrable at the origin
/// otherwise) and zero-mean noise. A non-positive full denominator is
/// reported through full_valid, not thrown.
EmseResult steady_state_emse(const TheoryInputs& inputs);

/// Sample estimate of the mean-square-stability step-size bound from a
/// simulation trace of paired (e_a(i), e(i), ||X(i)||^2) samples:
///
///   2 mean[e_a f(e)] / mean[||X||^2 f(e)^2]
///
/// Throws std::domain_error when the denominator vanishes (degenerate trace).
double empirical_step_bound(const SampleVector& a_priori_errors,
                            const SampleVector& errors,
                            const SampleVector& input_norms_sq,
                            const GgdKernel& k);

}  // namespace gmcc
