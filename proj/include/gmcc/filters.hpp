#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmcc/kernel.hpp"

namespace gmcc {

/// Thrown when a linear solve inside the fixed-point iteration meets a
/// (numerically) singular matrix.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// FIR filter tap vector. Plain value type; updates produce new states.
class FirFilterState {
 public:
  /// All-zero taps (the experiments start every filter from the null vector).
  explicit FirFilterState(std::size_t taps) : weights_(taps, 0.0) {}

  explicit FirFilterState(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  std::span<const double> span() const { return weights_; }

 private:
  friend struct FilterUpdate;
  std::vector<double> weights_;
};

/// Which stochastic-gradient rule to run and at what step-size.
///
/// gmcc:  W += eta * exp(-lambda|e|^alpha) |e|^(alpha-1) sign(e) X
/// lmp:   W += eta * |e|^(p-1) sign(e) X
///
/// lmp covers the classic family: p = 1 sign algorithm, p = 2 LMS,
/// p = 4 LMF. gmcc with alpha = 2 is the MCC algorithm, and as lambda -> 0
/// it reduces to lmp with p = alpha. eta is the only step-size parameter;
/// eta = 0 is permitted as the degenerate no-adaptation control.
class AlgorithmSpec {
 public:
  enum class Rule { gmcc, lmp };

  static AlgorithmSpec gmcc(const GgdKernel& kernel, double eta);
  static AlgorithmSpec lmp(double p, double eta);
  static AlgorithmSpec sign_algorithm(double eta) { return lmp(1.0, eta); }
  static AlgorithmSpec lms(double eta) { return lmp(2.0, eta); }
  static AlgorithmSpec lmf(double eta) { return lmp(4.0, eta); }
  static AlgorithmSpec mcc(double lambda, double eta) {
    return gmcc(GgdKernel::from_lambda(2.0, lambda), eta);
  }

  Rule rule() const { return rule_; }
  double eta() const { return eta_; }
  const GgdKernel& kernel() const;
  double p() const;

  AlgorithmSpec with_eta(double eta) const;

 private:
  AlgorithmSpec(Rule rule, std::optional<GgdKernel> kernel, double p, double eta)
      : rule_(rule), kernel_(kernel), p_(p), eta_(eta) {}

  Rule rule_;
  std::optional<GgdKernel> kernel_;
  double p_;
  double eta_;
};

/// One training sample: input vector X(i) and desired response d(i).
struct Regressand {
  std::vector<double> input;
  double desired = 0.0;
};

/// Filter output W^T X.
double predict(const FirFilterState& state, std::span<const double> input);

/// GMCC error nonlinearity f(e) = exp(-lambda|e|^alpha) |e|^(alpha-1) sign(e).
/// Odd, bounded, f(0) = 0 for every alpha > 0 (limit for alpha > 1; the
/// contribution is defined as zero for |e| < 1e-12 when alpha <= 1).
double gmcc_nonlinearity(double e, const GgdKernel& k);

/// LMP error nonlinearity |e|^(p-1) sign(e); shares its power/sign
/// arithmetic with the GMCC path so the lambda -> 0 equivalence is exact.
double lmp_nonlinearity(double e, double p);

/// One stochastic-gradient step. Returns the new state and the pre-update
/// error e = d - W^T X.
std::pair<FirFilterState, double> update(const FirFilterState& state,
                                         const AlgorithmSpec& spec,
                                         const Regressand& sample);

/// Same transition without the state copy; returns e. The harness's hot loop.
double update_in_place(FirFilterState& state, const AlgorithmSpec& spec,
                       std::span<const double> input, double desired);

struct FixedPointOptions {
  double tol = 1e-10;      // relative weight-change stopping criterion
  int max_iter = 500;
  double eps_reg = 1e-8;   // floor on |e| inside |e|^(alpha-2)
};

struct FixedPointResult {
  FirFilterState state;
  int iterations = 0;
  bool converged = false;
};

/// Batch solver for the optimal GMCC weights: iterates the weighted normal
/// equations
///
///   W <- [sum h(e_i) X_i X_i^T]^(-1) [sum h(e_i) d_i X_i],
///   h(e) = exp(-lambda|e|^alpha) max(|e|, eps_reg)^(alpha-2),
///
/// recomputing the errors each pass until the relative weight change drops
/// below tol. Passes after the first average the solve with the previous
/// iterate (the plain iteration 2-cycles when h grows with |e|, i.e.
/// alpha > 2; averaging keeps the fixed points and converges there).
/// Non-convergence is reported in the result, not thrown; a singular
/// weighted matrix throws SolverError.
FixedPointResult gmcc_fixed_point(std::span<const Regressand> samples,
                                  const GgdKernel& k,
                                  const FixedPointOptions& options = {});

}  // namespace gmcc
