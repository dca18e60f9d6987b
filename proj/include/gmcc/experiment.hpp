#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmcc/filters.hpp"
#include "gmcc/noise.hpp"
#include "gmcc/theory.hpp"

namespace gmcc {

/// System-identification ground truth: the unknown FIR system w0, a white
/// Gaussian input process and an additive noise model. The filter length
/// equals the length of w0.
struct SystemIdSetup {
  std::vector<double> w0;
  double input_variance = 1.0;
  NoiseModel noise;

  std::size_t order() const { return w0.size(); }
};

/// One Monte Carlo experiment: how many runs of how many iterations, under
/// which algorithm, seeded where. The whole experiment output is a pure
/// function of this struct.
struct RunConfig {
  int iterations = 0;
  int num_runs = 0;
  std::uint64_t base_seed = 0;
  AlgorithmSpec algorithm;
  SystemIdSetup setup;
};

/// Per-iteration record of a single run. When a run's weights (or its
/// weight-error power) stop being finite, the run halts: `diverged` is set,
/// `halted_at` records the iteration, and the remaining weight_error_power
/// entries repeat the last finite value so aggregates stay finite.
struct RunTrace {
  std::vector<double> weight_error_power;  // ||w0 - W(i)||^2 after update i
  std::vector<double> a_priori_error;      // e_a(i), before update i
  std::vector<double> error;               // e(i) = e_a(i) + v(i)
  std::vector<double> input_norm_sq;       // ||X(i)||^2
  bool diverged = false;
  int halted_at = -1;

  double final_weight_error_power() const {
    return weight_error_power.empty() ? 0.0 : weight_error_power.back();
  }
};

/// Runs one seeded realization: white Gaussian input of the configured
/// variance, tapped delay line with zero pre-history, d = w0^T X + v, filter
/// started from the null vector. Fully determined by (base_seed, run_index);
/// input and noise use distinct derived streams (2*run and 2*run+1).
RunTrace run_single(const RunConfig& config, int run_index);

struct PodRow {
  double eta = 0.0;
  int diverged_count = 0;
  int total_runs = 0;
  double pod = 0.0;
};

/// Probability-of-divergence sweep report: one row per tested step-size.
struct PodReport {
  std::vector<PodRow> rows;
  double divergence_threshold = 0.0;
};

/// For each step-size, runs num_runs independent realizations and counts a
/// run as diverged iff its final weight-error power exceeds the threshold or
/// any weight became non-finite. config.algorithm supplies the rule; its
/// step-size is replaced by each grid value.
PodReport pod_experiment(const RunConfig& config, std::span<const double> etas,
                         double divergence_threshold = 100.0);

/// Steady-state EMSE comparison for one configuration point.
struct EmseReport {
  double simulated_emse = 0.0;
  double theoretical_full = 0.0;
  double theoretical_simplified = 0.0;
  bool full_valid = false;
};

/// Simulated EMSE = mean over runs of the mean of e_a(i)^2 over the last
/// steady_window iterations; theoretical values from steady_state_emse with
/// Tr(R_xx) = m * input_variance. Requires a gmcc algorithm (the prediction
/// is specific to that nonlinearity).
EmseReport emse_experiment(const RunConfig& config, int steady_window);

/// Weight-error power learning curve averaged over runs.
struct LearningCurve {
  std::vector<double> weight_error_power;
};

/// Paired comparison of several algorithms under identical signals: within
/// each run, every algorithm consumes bit-identical input and noise
/// sequences. config.algorithm is ignored; one averaged curve per labeled
/// algorithm is returned in input order.
std::vector<std::pair<std::string, LearningCurve>> convergence_comparison(
    const std::vector<std::pair<std::string, AlgorithmSpec>>& algorithms,
    const RunConfig& config);

struct CalibrationResult {
  double eta = 0.0;
  double achieved = 0.0;  // mean weight-error power at the probe iteration
  bool hit_target = false;
};

/// Step-size calibration: finds the smallest eta (first crossing, log-scale
/// bisection) whose median weight-error power at iteration `probe_iteration`
/// over `num_runs` seeded runs matches `target` within `rel_tol`. The median
/// keeps the probe meaningful when an occasional run diverges (divergence
/// rates are what the experiments measure separately); a majority-diverged
/// probe reads as past the stability edge and the scan backs off. Use a
/// held-out seed, then freeze the returned eta in experiment configs.
CalibrationResult calibrate_step_size(const AlgorithmSpec& algorithm,
                                      const SystemIdSetup& setup,
                                      double target, int probe_iteration,
                                      int num_runs, std::uint64_t base_seed,
                                      double eta_lo = 1e-6, double eta_hi = 1.0,
                                      double rel_tol = 0.1);

/// Number of worker threads the harness uses: the GMCC_THREADS environment
/// variable when set to a positive value, otherwise the hardware
/// concurrency. Aggregation is in fixed run order regardless of schedule.
unsigned harness_thread_count();

/// Runs body(0..count-1) on the harness thread pool.
void parallel_for_runs(int count, const std::function<void(int)>& body);

}  // namespace gmcc
