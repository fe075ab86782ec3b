#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "adlab/noisy_quadratic.hpp"
#include "adlab/rng.hpp"
#include "adlab/vec.hpp"

namespace adlab {

// Unified Momentum: one update rule whose factor s selects the method.
//   s = 0           Heavy-Ball
//   s = 1           Nesterov
//   s = 1/(1-beta)  plain GD with effective rate alpha/(1-beta)
struct UmConfig {
  double beta = 0.0;
  double s = 0.0;

  void validate() const;

  static UmConfig heavy_ball(double beta) { return {beta, 0.0}; }
  static UmConfig nesterov(double beta) { return {beta, 1.0}; }
  static UmConfig gradient_descent(double beta) {
    return {beta, 1.0 / (1.0 - beta)};
  }
};

struct UmState {
  ParamVector x;
  ParamVector y;
  ParamVector y_s;
  std::uint64_t t = 0;

  // y_0 = y_0^s = x_0, i.e. the momentum buffer starts at zero.
  explicit UmState(ParamVector x0) : x(x0), y(x0), y_s(std::move(x0)) {}
};

// y_{t+1} = x - a g;  y^s_{t+1} = x - s a g;  x_{t+1} = y_{t+1} + beta (y^s_{t+1} - y^s_t)
void um_step(const UmConfig& cfg, UmState& state, const ParamVector& grad,
             double alpha);

// Piecewise-constant learning-rate schedule: alpha_t = alphas[i] for
// t_i <= t < t_{i+1}, with boundaries derived from the gap sequence.
struct PiecewiseSchedule {
  std::vector<double> alphas;       // {alpha_hat_i}, positive, non-increasing
  std::vector<std::uint64_t> gaps;  // {k_i}, each >= 1
  double alpha_before_first = 1.0;  // alpha_hat_{-1}; the (i+2)^-1 law at i=-1

  void validate() const;
  std::size_t phases() const { return alphas.size(); }
  std::uint64_t total_iterations() const;
  // Past the last boundary the final rate persists.
  double alpha_at(std::uint64_t t) const;
};

// How a schedule fares against the three step-drop constraints:
//   alpha_hat_i <= (i+2)^-1
//   k_i alpha_hat_i >= kappa1
//   k_i alpha_hat_i alpha_hat_{i-1} <= kappa2 (i+1)^-1
struct ScheduleReport {
  bool satisfies_decay;
  double kappa1_max;  // min_i k_i alpha_hat_i
  double kappa2_min;  // max_i k_i alpha_hat_i alpha_hat_{i-1} (i+1)
  bool feasible;
};

ScheduleReport validate_schedule(const PiecewiseSchedule& sched);

// Gradient oracle plus the (noise-free) loss used for reporting curves.
struct Problem {
  std::function<double(const ParamVector&)> loss;
  std::function<ParamVector(const ParamVector&, GaussianStream&)> grad;
};

Problem make_nqm_problem(const NqmConfig& cfg);

struct UmTrajectoryPoint {
  std::uint64_t t;
  double loss;
  double min_loss;  // running minimum, for the min-over-t bound check
  double alpha;
};

std::vector<UmTrajectoryPoint> run_um(const UmConfig& cfg,
                                      const PiecewiseSchedule& sched,
                                      const Problem& problem,
                                      const ParamVector& x0, std::uint64_t T,
                                      std::uint64_t seed);

}  // namespace adlab
