#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gmcc/rng.hpp"
#include "gmcc/sample_vector.hpp"

namespace gmcc {

/// Value-semantic noise/input distribution: Gaussian, uniform, Laplace,
/// symmetric binary, or a two-component mixture
///
///   v = (1 - a) * inner + a * outer,   a ~ Bernoulli(c)
///
/// (the impulsive-noise model: `outer` is the large-variance outlier
/// component with occurrence probability c). Mixture components must not
/// themselves be mixtures.
///
/// Sampling is a deterministic transform of uniforms with a fixed number of
/// draws per sample (inverse CDF for Gaussian and Laplace), so a
/// (model, n, stream) triple always reproduces the same vector.
class NoiseModel {
 public:
  enum class Kind { gaussian, uniform, laplace, binary, mixture };

  static NoiseModel gaussian(double mean, double variance);
  static NoiseModel uniform(double lo, double hi);
  static NoiseModel laplace(double mean, double variance);
  static NoiseModel binary_symmetric(double magnitude);
  static NoiseModel mixture(double c, NoiseModel inner, NoiseModel outer);

  Kind kind() const { return kind_; }

  double mean() const;
  double variance() const;

  /// True when the distribution has a density (no binary component).
  bool continuous() const;
  /// True when the density/mass is symmetric about zero.
  bool symmetric_about_zero() const;

  /// Probability density at v. Throws std::domain_error for distributions
  /// with a discrete component (use the point-mass expectation instead).
  double density(double v) const;

  double sample_one(SplitMix64& rng) const;
  SampleVector sample(std::size_t n, SeededStream stream) const;

  /// [lo, hi] outside of which the density is below `cutoff` (exact support
  /// for bounded distributions). Only meaningful for continuous models.
  std::pair<double, double> support(double cutoff) const;

  // Parameter accessors (meaningful per kind; see the factory functions).
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  double mixture_weight() const { return c_; }
  const NoiseModel& inner() const;
  const NoiseModel& outer() const;

 private:
  NoiseModel(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  double a_ = 0.0;  // gaussian/laplace: mean; uniform: lo; binary: magnitude
  double b_ = 0.0;  // gaussian/laplace: variance; uniform: hi
  double c_ = 0.0;  // mixture occurrence probability
  std::vector<NoiseModel> components_;  // [inner, outer] for mixtures
};

}  // namespace gmcc
