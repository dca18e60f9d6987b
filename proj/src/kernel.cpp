#include "gmcc/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "gmcc/math.hpp"

namespace gmcc {

namespace {

void require_same_length(const SampleVector& x, const SampleVector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("sample vectors have different lengths");
  }
  if (x.empty()) {
    throw std::invalid_argument("sample vectors must be non-empty");
  }
}

}  // namespace

GgdKernel GgdKernel::from_beta(double alpha, double beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("GgdKernel: alpha must be positive and finite");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("GgdKernel: beta must be positive and finite");
  }
  double lambda = std::pow(beta, -alpha);
  double gamma = alpha / (2.0 * beta * lanczos_gamma(1.0 / alpha));
  return GgdKernel(alpha, beta, lambda, gamma);
}

GgdKernel GgdKernel::from_lambda(double alpha, double lambda) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("GgdKernel: alpha must be positive and finite");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("GgdKernel: lambda must be positive and finite");
  }
  double beta = std::pow(lambda, -1.0 / alpha);
  double gamma = alpha / (2.0 * beta * lanczos_gamma(1.0 / alpha));
  return GgdKernel(alpha, beta, lambda, gamma);
}

double GgdKernel::density(double e) const {
  return gamma_ * std::exp(-lambda_ * std::pow(std::abs(e), alpha_));
}

double ggd_density(double e, const GgdKernel& k) { return k.density(e); }

double gc_loss(const SampleVector& x, const SampleVector& y, const GgdKernel& k) {
  // gamma - mean(density) evaluated as gamma * mean(1 - exp(-lambda|e|^alpha));
  // the expm1 form is exactly zero at x == y and keeps precision when lambda
  // is small enough that the densities all round to the peak value.
  require_same_length(x, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double diff = x[i] - y[i];
    sum += -std::expm1(-k.lambda() * std::pow(std::abs(diff), k.alpha()));
  }
  return k.normalizer() * (sum / static_cast<double>(x.size()));
}

double correntropy_estimate(const SampleVector& x, const SampleVector& y,
                            const GgdKernel& k) {
  return k.normalizer() - gc_loss(x, y, k);
}

double gcim(const SampleVector& x, const SampleVector& y, const GgdKernel& k) {
  return std::sqrt(gc_loss(x, y, k));
}

double induced_norm(const SampleVector& x, const GgdKernel& k) {
  if (x.empty()) {
    throw std::invalid_argument("induced_norm: empty sample vector");
  }
  SampleVector zero(std::vector<double>(x.size(), 0.0));
  double scaled = static_cast<double>(x.size()) /
                  (k.lambda() * k.normalizer()) * gc_loss(x, zero, k);
  return std::pow(scaled, 1.0 / k.alpha());
}

SampleVector gc_loss_gradient(const SampleVector& e, const GgdKernel& k) {
  if (e.empty()) {
    throw std::invalid_argument("gc_loss_gradient: empty sample vector");
  }
  const double alpha = k.alpha();
  const double lambda = k.lambda();
  const double scale =
      lambda * alpha * k.normalizer() / static_cast<double>(e.size());
  std::vector<double> grad(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    double mag = std::abs(e[i]);
    if (mag == 0.0) {
      if (alpha <= 1.0) {
        throw std::domain_error(
            "gc_loss_gradient: not differentiable at a zero component for alpha <= 1");
      }
      grad[i] = 0.0;
      continue;
    }
    grad[i] = scale * std::exp(-lambda * std::pow(mag, alpha)) *
              std::pow(mag, alpha - 1.0) * sign(e[i]);
  }
  return SampleVector(std::move(grad));
}

SampleVector gc_loss_hessian_diag(const SampleVector& e, const GgdKernel& k) {
  if (e.empty()) {
    throw std::invalid_argument("gc_loss_hessian_diag: empty sample vector");
  }
  const double alpha = k.alpha();
  const double lambda = k.lambda();
  const double scale =
      alpha * lambda * k.normalizer() / static_cast<double>(e.size());
  std::vector<double> diag(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    double mag = std::abs(e[i]);
    if (mag == 0.0 && alpha < 2.0) {
      throw std::domain_error(
          "gc_loss_hessian_diag: singular at a zero component for alpha < 2");
    }
    double t = std::exp(-lambda * std::pow(mag, alpha)) * std::pow(mag, alpha - 2.0);
    diag[i] = -scale * t * (alpha * lambda * std::pow(mag, alpha) - (alpha - 1.0));
  }
  return SampleVector(std::move(diag));
}

}  // namespace gmcc
