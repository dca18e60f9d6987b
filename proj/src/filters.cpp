#include "gmcc/filters.hpp"

#include <cmath>

#include "gmcc/math.hpp"

namespace gmcc {

FirFilterState::FirFilterState(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("FirFilterState: at least one tap required");
  }
  for (double w : weights_) {
    if (!std::isfinite(w)) {
      throw std::invalid_argument("FirFilterState: taps must be finite");
    }
  }
}

AlgorithmSpec AlgorithmSpec::gmcc(const GgdKernel& kernel, double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("AlgorithmSpec: eta must be finite and >= 0");
  }
  return AlgorithmSpec(Rule::gmcc, kernel, kernel.alpha(), eta);
}

AlgorithmSpec AlgorithmSpec::lmp(double p, double eta) {
  if (!(p > 0.0)) {
    throw std::invalid_argument("AlgorithmSpec: lmp requires p > 0");
  }
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("AlgorithmSpec: eta must be finite and >= 0");
  }
  return AlgorithmSpec(Rule::lmp, std::nullopt, p, eta);
}

const GgdKernel& AlgorithmSpec::kernel() const {
  if (rule_ != Rule::gmcc) {
    throw std::logic_error("AlgorithmSpec::kernel: not a gmcc rule");
  }
  return *kernel_;
}

double AlgorithmSpec::p() const {
  if (rule_ != Rule::lmp) {
    throw std::logic_error("AlgorithmSpec::p: not an lmp rule");
  }
  return p_;
}

AlgorithmSpec AlgorithmSpec::with_eta(double eta) const {
  AlgorithmSpec copy = *this;
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("AlgorithmSpec::with_eta: eta must be finite and >= 0");
  }
  copy.eta_ = eta;
  return copy;
}

double predict(const FirFilterState& state, std::span<const double> input) {
  return dot(state.span(), input);
}

double gmcc_nonlinearity(double e, const GgdKernel& k) {
  double base = signed_power(e, k.alpha() - 1.0);
  if (base == 0.0) {
    return 0.0;
  }
  return std::exp(-k.lambda() * std::pow(std::abs(e), k.alpha())) * base;
}

double lmp_nonlinearity(double e, double p) { return signed_power(e, p - 1.0); }

namespace {

double error_gain(const AlgorithmSpec& spec, double e) {
  return spec.rule() == AlgorithmSpec::Rule::gmcc
             ? gmcc_nonlinearity(e, spec.kernel())
             : lmp_nonlinearity(e, spec.p());
}

}  // namespace

struct FilterUpdate {
  static double apply(FirFilterState& state, const AlgorithmSpec& spec,
                      std::span<const double> input, double desired) {
    if (input.size() != state.size()) {
      throw std::invalid_argument("update: input length does not match filter order");
    }
    double e = desired - dot(state.span(), input);
    double g = spec.eta() * error_gain(spec, e);
    if (g != 0.0) {
      for (std::size_t j = 0; j < input.size(); ++j) {
        state.weights_[j] += g * input[j];
      }
    }
    return e;
  }
};

double update_in_place(FirFilterState& state, const AlgorithmSpec& spec,
                       std::span<const double> input, double desired) {
  return FilterUpdate::apply(state, spec, input, desired);
}

std::pair<FirFilterState, double> update(const FirFilterState& state,
                                         const AlgorithmSpec& spec,
                                         const Regressand& sample) {
  FirFilterState next = state;
  double e = FilterUpdate::apply(next, spec, sample.input, sample.desired);
  return {std::move(next), e};
}

namespace {

/// Gaussian elimination with partial pivoting on an m x m system; m <= a few
/// dozen here, so a direct dense solve is exact enough and reproducible.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> rhs,
                                std::size_t m) {
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * m + col]);
    for (std::size_t row = col + 1; row < m; ++row) {
      double v = std::abs(a[row * m + col]);
      if (v > best) {
        best = v;
        pivot = row;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best)) {
      throw SolverError("gmcc_fixed_point: weighted normal matrix is singular");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < m; ++j) {
        std::swap(a[col * m + j], a[pivot * m + j]);
      }
      std::swap(rhs[col], rhs[pivot]);
    }
    double inv = 1.0 / a[col * m + col];
    for (std::size_t row = col + 1; row < m; ++row) {
      double factor = a[row * m + col] * inv;
      if (factor == 0.0) {
        continue;
      }
      for (std::size_t j = col; j < m; ++j) {
        a[row * m + j] -= factor * a[col * m + j];
      }
      rhs[row] -= factor * rhs[col];
    }
  }
  std::vector<double> x(m);
  for (std::size_t i = m; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      s -= a[i * m + j] * x[j];
    }
    x[i] = s / a[i * m + i];
  }
  return x;
}

}  // namespace

FixedPointResult gmcc_fixed_point(std::span<const Regressand> samples,
                                  const GgdKernel& k,
                                  const FixedPointOptions& options) {
  if (samples.empty()) {
    throw std::invalid_argument("gmcc_fixed_point: no samples");
  }
  const std::size_t m = samples.front().input.size();
  if (m == 0) {
    throw std::invalid_argument("gmcc_fixed_point: empty input vectors");
  }
  if (samples.size() < m) {
    throw std::invalid_argument("gmcc_fixed_point: need at least as many samples as taps");
  }
  for (const Regressand& s : samples) {
    if (s.input.size() != m) {
      throw std::invalid_argument("gmcc_fixed_point: inconsistent input lengths");
    }
  }

  const double alpha = k.alpha();
  const double lambda = k.lambda();
  std::vector<double> w(m, 0.0);

  int iter = 0;
  bool converged = false;
  for (; iter < options.max_iter; ++iter) {
    std::vector<double> a(m * m, 0.0);
    std::vector<double> rhs(m, 0.0);
    for (const Regressand& s : samples) {
      double e = s.desired - dot(w, s.input);
      // Only the |e|^(alpha-2) factor is singular; the floor applies there.
      double floored = std::max(std::abs(e), options.eps_reg);
      double h = std::exp(-lambda * std::pow(std::abs(e), alpha)) *
                 std::pow(floored, alpha - 2.0);
      for (std::size_t r = 0; r < m; ++r) {
        double hr = h * s.input[r];
        rhs[r] += hr * s.desired;
        for (std::size_t c = r; c < m; ++c) {
          a[r * m + c] += hr * s.input[c];
        }
      }
    }
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < r; ++c) {
        a[r * m + c] = a[c * m + r];
      }
    }

    std::vector<double> next = solve_dense(std::move(a), std::move(rhs), m);
    // Relaxed (averaged) update after the first pass: the plain Picard map
    // settles into a 2-cycle for alpha > 2, where h(e) grows with |e|; the
    // averaged map has the same fixed points and converges there.
    const double theta = (iter == 0) ? 1.0 : 0.5;
    double delta2 = 0.0;
    double norm2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double updated = (1.0 - theta) * w[j] + theta * next[j];
      double d = updated - w[j];
      delta2 += d * d;
      norm2 += updated * updated;
      next[j] = updated;
    }
    w = std::move(next);
    double scale = norm2 > 0.0 ? std::sqrt(norm2) : 1.0;
    if (std::sqrt(delta2) < options.tol * scale) {
      converged = true;
      ++iter;
      break;
    }
  }

  return FixedPointResult{FirFilterState(std::move(w)), iter, converged};
}

}  // namespace gmcc
