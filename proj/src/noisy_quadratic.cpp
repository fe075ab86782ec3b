#include "adlab/noisy_quadratic.hpp"

#include <algorithm>
#include <cmath>

#include "adlab/angular_velocity.hpp"

namespace adlab {

double NqmConfig::max_a() const {
  return *std::max_element(a.begin(), a.end());
}

double NqmConfig::min_a() const {
  return *std::min_element(a.begin(), a.end());
}

void NqmConfig::validate() const {
  if (a.empty()) throw std::invalid_argument("NqmConfig: empty curvature diagonal");
  if (a.size() != sigma2.size())
    throw std::invalid_argument("NqmConfig: a and sigma2 length mismatch");
  for (double ai : a)
    if (!(ai > 0.0)) throw std::invalid_argument("NqmConfig: a_i must be > 0");
  for (double s : sigma2)
    if (!(s >= 0.0)) throw std::invalid_argument("NqmConfig: sigma2_i must be >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("NqmConfig: alpha must be > 0");
  // Variance fixed point exists iff |1 - alpha a_i| < 1 for all i.
  if (!(alpha * max_a() < 2.0))
    throw std::invalid_argument(
        "NqmConfig: alpha * max(a) must be < 2 (variance contraction)");
}

NqmConfig NqmConfig::reference_config(double alpha, std::size_t d) {
  NqmConfig cfg;
  cfg.a.resize(d);
  for (std::size_t i = 0; i < d; ++i) cfg.a[i] = static_cast<double>(i + 1) / 10.0;
  cfg.sigma2.assign(d, 1.0);
  cfg.alpha = alpha;
  return cfg;
}

double nqm_loss(const NqmConfig& cfg, const ParamVector& x) {
  check_same_dim(cfg.a, x, "nqm_loss");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += cfg.a[i] * x[i] * x[i];
  return 0.5 * acc;
}

void nqm_step(const NqmConfig& cfg, NqmState& state) {
  check_same_dim(cfg.a, state.x, "nqm_step");
  for (std::size_t i = 0; i < state.x.size(); ++i) {
    double c = cfg.sigma2[i] > 0.0
                   ? state.rng.normal(0.0, std::sqrt(cfg.sigma2[i]))
                   : 0.0;
    state.x[i] -= cfg.alpha * cfg.a[i] * (state.x[i] - c);
  }
  ++state.t;
}

NqmOracle nqm_oracle(const NqmConfig& cfg) {
  cfg.validate();
  double sum3 = 0.0;  // sum a_i^3 sigma_i^2 / (2 - alpha a_i)
  double sum2 = 0.0;  // sum a_i^2 sigma_i^2 / (2 - alpha a_i)
  bool any_noise = false;
  NqmOracle out;
  out.v_star.resize(cfg.dim());
  for (std::size_t i = 0; i < cfg.dim(); ++i) {
    double denom = 2.0 - cfg.alpha * cfg.a[i];
    sum3 += cfg.a[i] * cfg.a[i] * cfg.a[i] * cfg.sigma2[i] / denom;
    sum2 += cfg.a[i] * cfg.a[i] * cfg.sigma2[i] / denom;
    out.v_star[i] = cfg.alpha * cfg.a[i] * cfg.sigma2[i] / denom;
    any_noise = any_noise || cfg.sigma2[i] > 0.0;
  }
  if (!any_noise)
    throw DegenerateNoiseError("nqm_oracle: all-zero sigma2, c_star is 0/0");
  out.i_star = -cfg.alpha * cfg.alpha * cfg.alpha * sum3;
  out.n_star = 2.0 * cfg.alpha * cfg.alpha * sum2;
  out.c_star = out.i_star / out.n_star;
  out.angle_star = rad_to_deg(std::acos(std::clamp(out.c_star, -1.0, 1.0)));
  return out;
}

std::uint64_t nqm_default_burn_in(const NqmConfig& cfg) {
  return static_cast<std::uint64_t>(
      std::ceil(10.0 / (cfg.alpha * cfg.min_a())));
}

NqmEmpiricalLimits nqm_empirical_limits(const NqmConfig& cfg,
                                        std::uint64_t burn_in,
                                        std::uint64_t samples,
                                        std::uint64_t seed,
                                        const ParamVector* x0) {
  cfg.validate();
  if (samples == 0)
    throw std::invalid_argument("nqm_empirical_limits: samples must be > 0");

  NqmState state(x0 ? *x0 : ParamVector(cfg.dim(), 0.0), seed);
  for (std::uint64_t t = 0; t < burn_in; ++t) nqm_step(cfg, state);

  ParamVector prev_x = state.x;
  nqm_step(cfg, state);
  ParamVector prev_step = sub(state.x, prev_x);

  double sum_inner = 0.0;
  double sum_norm = 0.0;
  double sum_cos = 0.0;
  ParamVector sum_x(cfg.dim(), 0.0);
  ParamVector sum_x2(cfg.dim(), 0.0);

  for (std::uint64_t k = 0; k < samples; ++k) {
    prev_x = state.x;
    nqm_step(cfg, state);
    ParamVector step = sub(state.x, prev_x);

    double inner = dot(prev_step, step);
    sum_inner += inner;
    sum_norm += norm_sq(prev_step);
    sum_cos += inner / (norm(prev_step) * norm(step) + kAngleEpsilon);
    for (std::size_t i = 0; i < cfg.dim(); ++i) {
      sum_x[i] += state.x[i];
      sum_x2[i] += state.x[i] * state.x[i];
    }
    prev_step = std::move(step);
  }

  double inv = 1.0 / static_cast<double>(samples);
  NqmEmpiricalLimits out;
  out.i_hat = sum_inner * inv;
  out.n_hat = sum_norm * inv;
  out.c_hat = out.i_hat / out.n_hat;
  out.c_hat_direct = sum_cos * inv;
  out.var_hat.resize(cfg.dim());
  for (std::size_t i = 0; i < cfg.dim(); ++i) {
    double mean = sum_x[i] * inv;
    out.var_hat[i] = sum_x2[i] * inv - mean * mean;
  }
  return out;
}

}  // namespace adlab
