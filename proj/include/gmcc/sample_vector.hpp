#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gmcc {

/// Validated vector of real samples: every entry is finite (NaN/Inf are
/// rejected at construction). May be empty; the estimators that divide by N
/// reject empty input themselves.
class SampleVector {
 public:
  SampleVector() = default;

  explicit SampleVector(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("SampleVector: entries must be finite");
      }
    }
  }

  SampleVector(std::initializer_list<double> values)
      : SampleVector(std::vector<double>(values)) {}

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> span() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const SampleVector& a, const SampleVector& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
};

}  // namespace gmcc
