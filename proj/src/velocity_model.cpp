#include "adlab/velocity_model.hpp"

#include <cmath>
#include <stdexcept>

namespace adlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void VelocityModelParams::validate() const {
  if (!(gamma > 0.0))
    throw std::invalid_argument("VelocityModelParams: gamma must be > 0");
  if (!(alpha_max > 0.0))
    throw std::invalid_argument("VelocityModelParams: alpha_max must be > 0");
  // epsilon < 1/(3 alpha_max) keeps the asymptote below 2 pi / 3.
  if (!(epsilon >= 0.0 && epsilon < 1.0 / (3.0 * alpha_max)))
    throw std::invalid_argument(
        "VelocityModelParams: epsilon must be in [0, 1/(3 alpha_max))");
}

static void check_alpha(const VelocityModelParams& p, double alpha) {
  if (!(alpha > 0.0 && alpha <= p.alpha_max))
    throw std::invalid_argument("velocity model: alpha must be in (0, alpha_max]");
}

double velocity_model(const VelocityModelParams& p, double alpha, double t) {
  p.validate();
  check_alpha(p, alpha);
  if (t < 0.0) throw std::invalid_argument("velocity_model: t must be >= 0");
  double ga = p.gamma * alpha;
  return 0.5 * kPi * (1.0 + p.epsilon * alpha) *
         (1.0 - 1.0 / (ga * (t + 1.0 / ga)));
}

double velocity_model_derivative(const VelocityModelParams& p, double alpha,
                                 double t) {
  p.validate();
  check_alpha(p, alpha);
  if (t < 0.0)
    throw std::invalid_argument("velocity_model_derivative: t must be >= 0");
  double ga = p.gamma * alpha;
  double shifted = t + 1.0 / ga;
  return kPi * (1.0 + p.epsilon * alpha) / (2.0 * ga * shifted * shifted);
}

DropGap drop_gap(const VelocityModelParams& p, double alpha, double tau0) {
  p.validate();
  check_alpha(p, alpha);
  if (!(tau0 > 0.0 && tau0 < 2.0))
    throw std::invalid_argument("drop_gap: tau0 must be in (0, 2)");
  DropGap out;
  out.tau = std::min(tau0, p.gamma * alpha / 2.0);
  double ga = p.gamma * alpha;
  out.continuous = (1.0 / std::sqrt(ga)) *
                   (std::sqrt(kPi * (1.0 + p.epsilon * alpha) / (2.0 * out.tau)) -
                    1.0 / std::sqrt(ga));
  out.integer = static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(out.continuous)));
  return out;
}

std::vector<double> decay_law_alphas(DecayLaw law, std::size_t n) {
  std::vector<double> alphas(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (law == DecayLaw::kInverseIPlusTwo)
      alphas[i] = 1.0 / static_cast<double>(i + 2);
    else
      alphas[i] = std::pow(static_cast<double>(i + 1), -2.0 / 3.0);
  }
  return alphas;
}

void ApproxDropConfig::validate() const {
  if (!(tau0 > 0.0 && tau0 < 2.0))
    throw std::invalid_argument("ApproxDropConfig: tau0 must be in (0, 2)");
  if (alphas.empty())
    throw std::invalid_argument("ApproxDropConfig: empty learning-rate sequence");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0))
      throw std::invalid_argument("ApproxDropConfig: alphas must be > 0");
    if (i > 0 && alphas[i] >= alphas[i - 1])
      throw std::invalid_argument("ApproxDropConfig: alphas must be decreasing");
  }
}

PiecewiseSchedule PhasePlan::to_schedule(double alpha_before_first) const {
  PiecewiseSchedule sched;
  sched.alphas = alphas;
  sched.gaps = gaps;
  sched.alpha_before_first = alpha_before_first;
  return sched;
}

PhasePlan plan_drop_phases(const VelocityModelParams& p,
                              const ApproxDropConfig& cfg) {
  p.validate();
  cfg.validate();

  PhasePlan plan;
  plan.alphas = cfg.alphas;
  plan.kappa1 = (std::sqrt(kPi) - 1.0) / p.gamma;
  plan.kappa2 = std::sqrt(2.0 * kPi / (3.0 * cfg.tau0)) / p.gamma;

  std::uint64_t t = 0;
  std::uint64_t phase_start = 0;
  for (double alpha : cfg.alphas) {
    double tau = std::min(cfg.tau0, p.gamma * alpha / 2.0);
    // v'(0) > tau always (tau <= gamma alpha / 2 < pi gamma alpha / 2),
    // so each phase runs at least one iteration.
    for (;;) {
      double local = static_cast<double>(t - phase_start);
      if (velocity_model_derivative(p, alpha, local) <= tau && local > 0.0) break;
      ++t;
    }
    plan.gaps.push_back(t - phase_start);
    plan.continuous_gaps.push_back(drop_gap(p, alpha, cfg.tau0).continuous);
    plan.boundaries.push_back(t);
    phase_start = t;
  }
  plan.total = t;
  return plan;
}

TotalIterationBounds total_iteration_bounds(double kappa1, double kappa2,
                                   std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("total_iteration_bounds: n must be >= 1");
  double scale = static_cast<double>(n) * static_cast<double>(n + 3) / 2.0;
  return {kappa1 * scale, kappa2 * scale};
}

}  // namespace adlab
