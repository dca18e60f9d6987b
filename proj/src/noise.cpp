#include "gmcc/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gmcc/math.hpp"

namespace gmcc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

NoiseModel NoiseModel::gaussian(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
    throw std::invalid_argument("NoiseModel::gaussian: variance must be positive");
  }
  return NoiseModel(Kind::gaussian, mean, variance);
}

NoiseModel NoiseModel::uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("NoiseModel::uniform: requires lo < hi");
  }
  return NoiseModel(Kind::uniform, lo, hi);
}

NoiseModel NoiseModel::laplace(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean)) {
    throw std::invalid_argument("NoiseModel::laplace: variance must be positive");
  }
  return NoiseModel(Kind::laplace, mean, variance);
}

NoiseModel NoiseModel::binary_symmetric(double magnitude) {
  if (!(magnitude > 0.0) || !std::isfinite(magnitude)) {
    throw std::invalid_argument("NoiseModel::binary_symmetric: magnitude must be positive");
  }
  return NoiseModel(Kind::binary, magnitude, 0.0);
}

NoiseModel NoiseModel::mixture(double c, NoiseModel inner, NoiseModel outer) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("NoiseModel::mixture: c must lie in [0, 1]");
  }
  if (inner.kind() == Kind::mixture || outer.kind() == Kind::mixture) {
    throw std::invalid_argument("NoiseModel::mixture: components must not be mixtures");
  }
  NoiseModel m(Kind::mixture, 0.0, 0.0);
  m.c_ = c;
  m.components_.push_back(std::move(inner));
  m.components_.push_back(std::move(outer));
  return m;
}

const NoiseModel& NoiseModel::inner() const {
  if (kind_ != Kind::mixture) {
    throw std::logic_error("NoiseModel::inner: not a mixture");
  }
  return components_[0];
}

const NoiseModel& NoiseModel::outer() const {
  if (kind_ != Kind::mixture) {
    throw std::logic_error("NoiseModel::outer: not a mixture");
  }
  return components_[1];
}

double NoiseModel::mean() const {
  switch (kind_) {
    case Kind::gaussian:
    case Kind::laplace:
      return a_;
    case Kind::uniform:
      return 0.5 * (a_ + b_);
    case Kind::binary:
      return 0.0;
    case Kind::mixture:
      return (1.0 - c_) * components_[0].mean() + c_ * components_[1].mean();
  }
  return 0.0;
}

double NoiseModel::variance() const {
  switch (kind_) {
    case Kind::gaussian:
    case Kind::laplace:
      return b_;
    case Kind::uniform: {
      double w = b_ - a_;
      return w * w / 12.0;
    }
    case Kind::binary:
      return a_ * a_;
    case Kind::mixture: {
      // E[v^2] - mean^2 via component second moments.
      double m_in = components_[0].mean();
      double m_out = components_[1].mean();
      double s_in = components_[0].variance() + m_in * m_in;
      double s_out = components_[1].variance() + m_out * m_out;
      double second = (1.0 - c_) * s_in + c_ * s_out;
      double m = mean();
      return second - m * m;
    }
  }
  return 0.0;
}

bool NoiseModel::continuous() const {
  switch (kind_) {
    case Kind::binary:
      return false;
    case Kind::mixture:
      return components_[0].continuous() && components_[1].continuous();
    default:
      return true;
  }
}

bool NoiseModel::symmetric_about_zero() const {
  switch (kind_) {
    case Kind::gaussian:
    case Kind::laplace:
      return a_ == 0.0;
    case Kind::uniform:
      return a_ == -b_;
    case Kind::binary:
      return true;
    case Kind::mixture:
      return components_[0].symmetric_about_zero() &&
             components_[1].symmetric_about_zero();
  }
  return false;
}

double NoiseModel::density(double v) const {
  switch (kind_) {
    case Kind::gaussian: {
      double d = v - a_;
      return std::exp(-d * d / (2.0 * b_)) / std::sqrt(2.0 * kPi * b_);
    }
    case Kind::uniform:
      return (v >= a_ && v <= b_) ? 1.0 / (b_ - a_) : 0.0;
    case Kind::laplace: {
      double scale = std::sqrt(b_ / 2.0);
      return std::exp(-std::abs(v - a_) / scale) / (2.0 * scale);
    }
    case Kind::binary:
      throw std::domain_error("NoiseModel::density: binary distribution has no density");
    case Kind::mixture:
      return (1.0 - c_) * components_[0].density(v) + c_ * components_[1].density(v);
  }
  return 0.0;
}

double NoiseModel::sample_one(SplitMix64& rng) const {
  switch (kind_) {
    case Kind::gaussian:
      return a_ + std::sqrt(b_) * standard_normal_icdf(rng.next_unit_open());
    case Kind::uniform:
      return a_ + (b_ - a_) * rng.next_unit_open();
    case Kind::laplace: {
      double scale = std::sqrt(b_ / 2.0);
      double u = rng.next_unit_open() - 0.5;
      return a_ - scale * sign(u == 0.0 ? 1.0 : u) * std::log1p(-2.0 * std::abs(u));
    }
    case Kind::binary:
      return (rng.next_unit_open() < 0.5) ? -a_ : a_;
    case Kind::mixture: {
      // One gate draw plus one component draw per sample.
      double gate = rng.next_unit_open();
      return (gate < c_) ? components_[1].sample_one(rng)
                         : components_[0].sample_one(rng);
    }
  }
  return 0.0;
}

SampleVector NoiseModel::sample(std::size_t n, SeededStream stream) const {
  SplitMix64 rng = stream.make_rng();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = sample_one(rng);
  }
  return SampleVector(std::move(out));
}

std::pair<double, double> NoiseModel::support(double cutoff) const {
  switch (kind_) {
    case Kind::gaussian: {
      double sigma = std::sqrt(b_);
      double peak = 1.0 / std::sqrt(2.0 * kPi * b_);
      double r = (cutoff < peak) ? sigma * std::sqrt(-2.0 * std::log(cutoff / peak))
                                 : sigma;
      return {a_ - r, a_ + r};
    }
    case Kind::uniform:
      return {a_, b_};
    case Kind::laplace: {
      double scale = std::sqrt(b_ / 2.0);
      double peak = 1.0 / (2.0 * scale);
      double r = (cutoff < peak) ? scale * std::log(peak / cutoff) : scale;
      return {a_ - r, a_ + r};
    }
    case Kind::binary:
      return {-a_, a_};
    case Kind::mixture: {
      auto s0 = components_[0].support(cutoff);
      auto s1 = components_[1].support(cutoff);
      return {std::min(s0.first, s1.first), std::max(s0.second, s1.second)};
    }
  }
  return {0.0, 0.0};
}

}  // namespace gmcc
