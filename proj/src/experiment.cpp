#include "gmcc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "gmcc/math.hpp"
#include "gmcc/rng.hpp"

namespace gmcc {

namespace {

void validate(const RunConfig& config) {
  if (config.iterations < 1) {
    throw std::invalid_argument("RunConfig: iterations must be >= 1");
  }
  if (config.num_runs < 1) {
    throw std::invalid_argument("RunConfig: num_runs must be >= 1");
  }
  if (config.setup.w0.empty()) {
    throw std::invalid_argument("RunConfig: w0 must be non-empty");
  }
  if (!(config.setup.input_variance > 0.0)) {
    throw std::invalid_argument("RunConfig: input_variance must be positive");
  }
}

/// Core loop shared by run_single and the paired comparison: consumes
/// pre-generated input and noise sequences.
RunTrace run_filter_trace(const AlgorithmSpec& algorithm,
                          const std::vector<double>& w0,
                          const SampleVector& inputs,
                          const SampleVector& noise) {
  const std::size_t m = w0.size();
  const int iterations = static_cast<int>(inputs.size());
  RunTrace trace;
  trace.weight_error_power.resize(iterations);
  trace.a_priori_error.resize(iterations);
  trace.error.resize(iterations);
  trace.input_norm_sq.resize(iterations);

  FirFilterState state(m);
  std::vector<double> x(m, 0.0);  // tapped delay line, zero pre-history
  double last_wep = squared_norm(w0);

  for (int i = 0; i < iterations; ++i) {
    for (std::size_t j = m; j-- > 1;) {
      x[j] = x[j - 1];
    }
    x[0] = inputs[i];

    double y0 = dot(w0, x);
    double ea = y0 - predict(state, x);
    double d = y0 + noise[static_cast<std::size_t>(i)];
    double xnorm2 = squared_norm(x);
    double e = update_in_place(state, algorithm, x, d);

    double wep = 0.0;
    bool finite = true;
    for (std::size_t j = 0; j < m; ++j) {
      double diff = w0[j] - state.weights()[j];
      wep += diff * diff;
      finite = finite && std::isfinite(state.weights()[j]);
    }
    finite = finite && std::isfinite(wep) && std::isfinite(e);

    trace.a_priori_error[i] = std::isfinite(ea) ? ea : 0.0;
    trace.error[i] = std::isfinite(e) ? e : 0.0;
    trace.input_norm_sq[i] = xnorm2;

    if (!finite) {
      trace.diverged = true;
      trace.halted_at = i;
      for (int r = i; r < iterations; ++r) {
        trace.weight_error_power[r] = last_wep;
        if (r > i) {
          trace.a_priori_error[r] = 0.0;
          trace.error[r] = 0.0;
          trace.input_norm_sq[r] = 0.0;
        }
      }
      return trace;
    }
    trace.weight_error_power[i] = wep;
    last_wep = wep;
  }
  return trace;
}

struct RunSignals {
  SampleVector inputs;
  SampleVector noise;
};

RunSignals generate_signals(const RunConfig& config, int run_index) {
  NoiseModel input_model =
      NoiseModel::gaussian(0.0, config.setup.input_variance);
  SeededStream input_stream{config.base_seed,
                            2 * static_cast<std::uint64_t>(run_index)};
  SeededStream noise_stream{config.base_seed,
                            2 * static_cast<std::uint64_t>(run_index) + 1};
  std::size_t n = static_cast<std::size_t>(config.iterations);
  return RunSignals{input_model.sample(n, input_stream),
                    config.setup.noise.sample(n, noise_stream)};
}

bool run_diverged(const RunTrace& trace, double threshold) {
  return trace.diverged || trace.final_weight_error_power() > threshold;
}

}  // namespace

RunTrace run_single(const RunConfig& config, int run_index) {
  validate(config);
  RunSignals signals = generate_signals(config, run_index);
  return run_filter_trace(config.algorithm, config.setup.w0, signals.inputs,
                          signals.noise);
}

unsigned harness_thread_count() {
  if (const char* env = std::getenv("GMCC_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) {
      return static_cast<unsigned>(v);
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_for_runs(int count, const std::function<void(int)>& body) {
  unsigned threads = harness_thread_count();
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      body(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(count));
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back(worker);
  }
  for (std::thread& t : pool) {
    t.join();
  }
}

PodReport pod_experiment(const RunConfig& config, std::span<const double> etas,
                         double divergence_threshold) {
  validate(config);
  if (!(divergence_threshold > 0.0)) {
    throw std::invalid_argument("pod_experiment: threshold must be positive");
  }
  PodReport report;
  report.divergence_threshold = divergence_threshold;
  for (double eta : etas) {
    RunConfig point = config;
    point.algorithm = config.algorithm.with_eta(eta);
    std::vector<char> diverged(static_cast<std::size_t>(config.num_runs), 0);
    parallel_for_runs(config.num_runs, [&](int run) {
      RunTrace trace = run_single(point, run);
      diverged[static_cast<std::size_t>(run)] =
          run_diverged(trace, divergence_threshold) ? 1 : 0;
    });
    int count = 0;
    for (char flag : diverged) {
      count += flag;
    }
    report.rows.push_back(PodRow{eta, count, config.num_runs,
                                 static_cast<double>(count) /
                                     static_cast<double>(config.num_runs)});
  }
  return report;
}

EmseReport emse_experiment(const RunConfig& config, int steady_window) {
  validate(config);
  if (steady_window < 1 || steady_window >= config.iterations) {
    throw std::invalid_argument(
        "emse_experiment: steady_window must lie in [1, iterations)");
  }
  if (config.algorithm.rule() != AlgorithmSpec::Rule::gmcc) {
    throw std::invalid_argument(
        "emse_experiment: the theoretical prediction applies to gmcc rules");
  }

  std::vector<double> per_run(static_cast<std::size_t>(config.num_runs), 0.0);
  parallel_for_runs(config.num_runs, [&](int run) {
    RunTrace trace = run_single(config, run);
    CompensatedSum window;
    for (int i = config.iterations - steady_window; i < config.iterations; ++i) {
      double ea = trace.a_priori_error[static_cast<std::size_t>(i)];
      window.add(ea * ea);
    }
    per_run[static_cast<std::size_t>(run)] =
        window.value() / static_cast<double>(steady_window);
  });

  CompensatedSum total;
  for (double v : per_run) {
    total.add(v);
  }

  TheoryInputs inputs{config.algorithm.kernel(), config.algorithm.eta(),
                      static_cast<double>(config.setup.order()) *
                          config.setup.input_variance,
                      config.setup.noise};
  EmseResult theory = steady_state_emse(inputs);

  EmseReport report;
  report.simulated_emse = total.value() / static_cast<double>(config.num_runs);
  report.theoretical_full = theory.full;
  report.theoretical_simplified = theory.simplified;
  report.full_valid = theory.full_valid;
  return report;
}

std::vector<std::pair<std::string, LearningCurve>> convergence_comparison(
    const std::vector<std::pair<std::string, AlgorithmSpec>>& algorithms,
    const RunConfig& config) {
  validate(config);
  if (algorithms.empty()) {
    throw std::invalid_argument("convergence_comparison: no algorithms");
  }
  const std::size_t n_algo = algorithms.size();
  const std::size_t iters = static_cast<std::size_t>(config.iterations);

  // wep[run][algo] kept per run so the reduction is in fixed run order.
  std::vector<std::vector<std::vector<double>>> per_run(
      static_cast<std::size_t>(config.num_runs));
  parallel_for_runs(config.num_runs, [&](int run) {
    RunSignals signals = generate_signals(config, run);
    auto& slot = per_run[static_cast<std::size_t>(run)];
    slot.reserve(n_algo);
    for (const auto& [label, spec] : algorithms) {
      (void)label;
      RunTrace trace = run_filter_trace(spec, config.setup.w0, signals.inputs,
                                        signals.noise);
      slot.push_back(std::move(trace.weight_error_power));
    }
  });

  std::vector<std::pair<std::string, LearningCurve>> curves;
  curves.reserve(n_algo);
  for (std::size_t a = 0; a < n_algo; ++a) {
    std::vector<CompensatedSum> sums(iters);
    for (const auto& slot : per_run) {
      for (std::size_t i = 0; i < iters; ++i) {
        sums[i].add(slot[a][i]);
      }
    }
    LearningCurve curve;
    curve.weight_error_power.resize(iters);
    for (std::size_t i = 0; i < iters; ++i) {
      curve.weight_error_power[i] =
          sums[i].value() / static_cast<double>(config.num_runs);
    }
    curves.emplace_back(algorithms[a].first, std::move(curve));
  }
  return curves;
}

CalibrationResult calibrate_step_size(const AlgorithmSpec& algorithm,
                                      const SystemIdSetup& setup, double target,
                                      int probe_iteration, int num_runs,
                                      std::uint64_t base_seed, double eta_lo,
                                      double eta_hi, double rel_tol) {
  if (probe_iteration < 1) {
    throw std::invalid_argument("calibrate_step_size: probe_iteration must be >= 1");
  }
  if (!(target > 0.0)) {
    throw std::invalid_argument("calibrate_step_size: target must be positive");
  }
  if (!(eta_lo > 0.0 && eta_hi > eta_lo)) {
    throw std::invalid_argument("calibrate_step_size: need 0 < eta_lo < eta_hi");
  }

  // Median weight-error power at the probe iteration: robust to the odd
  // diverged run (those are what the experiments count separately), so the
  // calibration tracks typical initial convergence.
  auto probe = [&](double eta) {
    RunConfig config{probe_iteration, num_runs, base_seed,
                     algorithm.with_eta(eta), setup};
    std::vector<double> finals(static_cast<std::size_t>(num_runs), 0.0);
    parallel_for_runs(num_runs, [&](int run) {
      RunTrace trace = run_single(config, run);
      finals[static_cast<std::size_t>(run)] =
          trace.diverged ? std::numeric_limits<double>::infinity()
                         : trace.final_weight_error_power();
    });
    std::sort(finals.begin(), finals.end());
    std::size_t n = finals.size();
    return (n % 2 == 1) ? finals[n / 2]
                        : 0.5 * (finals[n / 2 - 1] + finals[n / 2]);
  };

  // The probe decreases in eta on the stable branch. Scan upward for the
  // first eta whose probe crosses below the target, then bisect the bracket;
  // the first crossing avoids landing on the large-eta plateau.
  double best_eta = eta_lo;
  double best_val = probe(eta_lo);
  double lo = eta_lo;
  double lo_val = best_val;
  double hi = 0.0;
  for (double eta = 2.0 * eta_lo; eta <= eta_hi * (1.0 + 1e-12); eta *= 2.0) {
    double value = probe(eta);
    if (std::isfinite(value) &&
        std::abs(value - target) < std::abs(best_val - target)) {
      best_eta = eta;
      best_val = value;
    }
    if (!std::isfinite(value)) {
      break;  // majority of runs diverged: past the stability edge
    }
    if (value <= target) {
      hi = eta;
      break;
    }
    lo = eta;
    lo_val = value;
  }
  if (hi > 0.0 && lo_val > target) {
    for (int it = 0; it < 40; ++it) {
      double mid = std::sqrt(lo * hi);
      double value = probe(mid);
      if (std::isfinite(value) &&
          std::abs(value - target) < std::abs(best_val - target)) {
        best_eta = mid;
        best_val = value;
      }
      if (!std::isfinite(value) || value <= target) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  bool hit = std::isfinite(best_val) &&
             std::abs(best_val - target) <= rel_tol * target;
  return CalibrationResult{best_eta, best_val, hit};
}

}  // namespace gmcc
