#include "adlab/unified_momentum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adlab {

void UmConfig::validate() const {
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("UmConfig: beta must be in [0, 1)");
  if (!(s >= 0.0)) throw std::invalid_argument("UmConfig: s must be >= 0");
}

void um_step(const UmConfig& cfg, UmState& state, const ParamVector& grad,
             double alpha) {
  check_same_dim(state.x, grad, "um_step");
  if (!(alpha > 0.0)) throw std::invalid_argument("um_step: alpha must be > 0");

  const std::size_t d = state.x.size();
  ParamVector y_new(d), y_s_new(d);
  for (std::size_t i = 0; i < d; ++i) {
    y_new[i] = state.x[i] - alpha * grad[i];
    y_s_new[i] = state.x[i] - cfg.s * alpha * grad[i];
  }
  for (std::size_t i = 0; i < d; ++i)
    state.x[i] = y_new[i] + cfg.beta * (y_s_new[i] - state.y_s[i]);
  state.y = std::move(y_new);
  state.y_s = std::move(y_s_new);
  ++state.t;
}

void PiecewiseSchedule::validate() const {
  if (alphas.empty())
    throw std::invalid_argument("PiecewiseSchedule: empty schedule");
  if (alphas.size() != gaps.size())
    throw std::invalid_argument("PiecewiseSchedule: alphas/gaps length mismatch");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0))
      throw std::invalid_argument("PiecewiseSchedule: alphas must be > 0");
    if (gaps[i] == 0)
      throw std::invalid_argument("PiecewiseSchedule: gaps must be >= 1");
    if (i > 0 && alphas[i] > alphas[i - 1])
      throw std::invalid_argument("PiecewiseSchedule: alphas must be non-increasing");
  }
}

std::uint64_t PiecewiseSchedule::total_iterations() const {
  std::uint64_t total = 0;
  for (std::uint64_t k : gaps) total += k;
  return total;
}

double PiecewiseSchedule::alpha_at(std::uint64_t t) const {
  std::uint64_t boundary = 0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    boundary += gaps[i];
    if (t < boundary) return alphas[i];
  }
  return alphas.back();
}

ScheduleReport validate_schedule(const PiecewiseSchedule& sched) {
  sched.validate();
  ScheduleReport report;
  report.satisfies_decay = true;
  report.kappa1_max = std::numeric_limits<double>::infinity();
  report.kappa2_min = 0.0;
  for (std::size_t i = 0; i < sched.phases(); ++i) {
    double ai = sched.alphas[i];
    double ai_prev = i == 0 ? sched.alpha_before_first : sched.alphas[i - 1];
    double ki = static_cast<double>(sched.gaps[i]);
    if (ai > 1.0 / static_cast<double>(i + 2)) report.satisfies_decay = false;
    report.kappa1_max = std::min(report.kappa1_max, ki * ai);
    report.kappa2_min =
        std::max(report.kappa2_min, ki * ai * ai_prev * static_cast<double>(i + 1));
  }
  report.feasible = report.satisfies_decay && report.kappa1_max > 0.0 &&
                    std::isfinite(report.kappa2_min);
  return report;
}

Problem make_nqm_problem(const NqmConfig& cfg) {
  Problem p;
  p.loss = [cfg](const ParamVector& x) { return nqm_loss(cfg, x); };
  p.grad = [cfg](const ParamVector& x, GaussianStream& rng) {
    ParamVector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      double c = cfg.sigma2[i] > 0.0
                     ? rng.normal(0.0, std::sqrt(cfg.sigma2[i]))
                     : 0.0;
      g[i] = cfg.a[i] * (x[i] - c);
    }
    return g;
  };
  return p;
}

std::vector<UmTrajectoryPoint> run_um(const UmConfig& cfg,
                                      const PiecewiseSchedule& sched,
                                      const Problem& problem,
                                      const ParamVector& x0, std::uint64_t T,
                                      std::uint64_t seed) {
  cfg.validate();
  sched.validate();
  GaussianStream rng(seed);
  UmState state(x0);
  std::vector<UmTrajectoryPoint> traj;
  traj.reserve(T);
  double min_loss = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < T; ++t) {
    double alpha = sched.alpha_at(t);
    double loss = problem.loss(state.x);
    min_loss = std::min(min_loss, loss);
    traj.push_back({t, loss, min_loss, alpha});
    um_step(cfg, state, problem.grad(state.x, rng), alpha);
  }
  return traj;
}

}  // namespace adlab
