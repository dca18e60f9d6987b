#pragma once

#include "gmcc/sample_vector.hpp"

namespace gmcc {

/// Generalized Gaussian density kernel
///
///   G(e) = gamma * exp(-lambda * |e|^alpha)
///
/// with shape alpha > 0, bandwidth beta > 0, kernel parameter
/// lambda = beta^(-alpha) and normalizer gamma = alpha / (2 beta Gamma(1/alpha)).
/// alpha = 2 recovers the Gaussian kernel (beta = sqrt(2) sigma), alpha = 1
/// the Laplacian. Construct from either (alpha, beta) or (alpha, lambda);
/// the experiments quote lambda, so lambda is the canonical parameter in
/// configuration files.
class GgdKernel {
 public:
  static GgdKernel from_beta(double alpha, double beta);
  static GgdKernel from_lambda(double alpha, double lambda);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double lambda() const { return lambda_; }
  /// Peak value G(0), the normalization constant of the density.
  double normalizer() const { return gamma_; }

  /// G(e); strictly positive, at most normalizer().
  double density(double e) const;

 private:
  GgdKernel(double alpha, double beta, double lambda, double gamma)
      : alpha_(alpha), beta_(beta), lambda_(lambda), gamma_(gamma) {}

  double alpha_;
  double beta_;
  double lambda_;
  double gamma_;
};

/// G(e) as a free function.
double ggd_density(double e, const GgdKernel& k);

/// Sample estimator of the generalized correntropy between two sample
/// vectors: the mean kernel value of the componentwise differences.
/// Result lies in (0, normalizer()], with equality iff x == y.
double correntropy_estimate(const SampleVector& x, const SampleVector& y,
                            const GgdKernel& k);

/// normalizer() - correntropy_estimate; a bounded robust loss in
/// [0, normalizer()), zero iff x == y.
double gc_loss(const SampleVector& x, const SampleVector& y, const GgdKernel& k);

/// sqrt(gc_loss). A metric on sample vectors for 0 < alpha <= 2; still
/// well-defined for alpha > 2 but the kernel is no longer positive definite
/// there, so the triangle inequality is not guaranteed.
double gcim(const SampleVector& x, const SampleVector& y, const GgdKernel& k);

/// Norm-like functional induced by the loss against the zero vector:
///
///   ((N / (lambda * gamma)) * gc_loss(x, 0))^(1/alpha)
///
/// Approaches the l_alpha norm of x as lambda -> 0 and ranks vectors by
/// their l_0 count as lambda -> infinity.
double induced_norm(const SampleVector& x, const GgdKernel& k);

/// Gradient of the sample loss with respect to the error vector e:
/// component i is (lambda*alpha*gamma/N) exp(-lambda|e_i|^alpha)
/// |e_i|^(alpha-1) sign(e_i). Defined as 0 at e_i = 0 for alpha > 1 (the
/// limit); throws std::domain_error if alpha <= 1 and some e_i == 0.
SampleVector gc_loss_gradient(const SampleVector& e, const GgdKernel& k);

/// Diagonal of the Hessian of the sample loss (the off-diagonal entries are
/// identically zero): component i is
/// -(alpha*lambda*gamma/N) T(e_i) (alpha*lambda|e_i|^alpha - (alpha-1))
/// with T(x) = exp(-lambda|x|^alpha) |x|^(alpha-2). Throws std::domain_error
/// for a zero component when alpha < 2 (the |e|^(alpha-2) factor is
/// singular there).
SampleVector gc_loss_hessian_diag(const SampleVector& e, const GgdKernel& k);

}  // namespace gmcc
