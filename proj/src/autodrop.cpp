#include "adlab/autodrop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace adlab {

void AutoDropConfig::validate() const {
  if (!(alpha_min > 0.0 && alpha_min <= alpha0))
    throw std::invalid_argument("AutoDropConfig: need 0 < alpha_min <= alpha0");
  if (!(theta0 > 0.0 && theta0 <= theta_max))
    throw std::invalid_argument("AutoDropConfig: need 0 < theta0 <= theta_max");
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("AutoDropConfig: rho must be in (0, 1)");
  if (n_d < 1) throw std::invalid_argument("AutoDropConfig: n_d must be >= 1");
}

AutoDropScheduler::AutoDropScheduler(AutoDropConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  state_.alpha = cfg_.alpha0;
  state_.theta = cfg_.theta0;
}

EpochDecision AutoDropScheduler::observe_epoch(const ParamVector& params) {
  if (prev_params_) check_same_dim(params, *prev_params_, "observe_epoch");
  ++state_.t;

  std::optional<double> omega;
  if (prev_params_) {
    ParamVector step = sub(params, *prev_params_);
    if (prev_step_) omega = angle_between_degrees(step, *prev_step_);
    prev_step_ = std::move(step);
  }
  prev_params_ = params;

  EpochDecision decision;
  decision.alpha_for_next_epoch = state_.alpha;

  bool in_cooldown =
      any_drop_ && cfg_.cooldown_epochs > 0 &&
      state_.t - last_drop_epoch_ <= cfg_.cooldown_epochs;

  if (state_.t > 2 && !state_.drop_pending && !in_cooldown && omega &&
      state_.prev_omega &&
      std::abs(*omega - *state_.prev_omega) < state_.theta) {
    state_.drop_pending = true;
    state_.z.assign(params.size(), 0.0);
    state_.k = 0;
  }

  if (state_.drop_pending) {
    ++state_.k;
    if (state_.z.size() != params.size()) state_.z.assign(params.size(), 0.0);
    axpy(static_cast<double>(state_.k), params, state_.z);
    if (state_.k >= cfg_.n_d) {
      ParamVector averaged = state_.z;
      scale(2.0 / (static_cast<double>(cfg_.n_d + 1) *
                   static_cast<double>(cfg_.n_d)),
            averaged);
      decision.params_override = std::move(averaged);
      decision.dropped = true;
      state_.alpha = std::max(cfg_.alpha_min, cfg_.rho * state_.alpha);
      state_.theta = std::min(cfg_.theta_max, state_.theta / cfg_.rho);
      state_.drop_pending = false;
      state_.k = 0;
      state_.z.clear();
      last_drop_epoch_ = state_.t;
      any_drop_ = true;
      // The averaged parameters replace x, so the next step is measured
      // from them.
      prev_params_ = *decision.params_override;
    }
  }

  if (omega) state_.prev_omega = omega;
  decision.alpha_for_next_epoch = state_.alpha;
  return decision;
}

namespace {

std::string vec_to_string(const ParamVector& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) os << ' ';
    os << v[i];
  }
  return os.str();
}

ParamVector vec_from_string(const std::string& s) {
  ParamVector v;
  std::istringstream is(s);
  double x;
  while (is >> x) v.push_back(x);
  return v;
}

}  // namespace

std::map<std::string, std::string> AutoDropScheduler::snapshot() const {
  std::map<std::string, std::string> kv;
  auto put_num = [&kv](const std::string& key, double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    kv[key] = os.str();
  };
  put_num("alpha", state_.alpha);
  put_num("theta", state_.theta);
  kv["t"] = std::to_string(state_.t);
  kv["drop_pending"] = state_.drop_pending ? "1" : "0";
  kv["k"] = std::to_string(state_.k);
  kv["z"] = vec_to_string(state_.z);
  if (state_.prev_omega) put_num("prev_omega", *state_.prev_omega);
  if (prev_params_) kv["prev_params"] = vec_to_string(*prev_params_);
  if (prev_step_) kv["prev_step"] = vec_to_string(*prev_step_);
  kv["last_drop_epoch"] = std::to_string(last_drop_epoch_);
  kv["any_drop"] = any_drop_ ? "1" : "0";
  return kv;
}

AutoDropScheduler AutoDropScheduler::restore(
    AutoDropConfig cfg, const std::map<std::string, std::string>& kv) {
  AutoDropScheduler sched(cfg);
  auto need = [&kv](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument("AutoDropScheduler::restore: missing key " + key);
    return it->second;
  };
  sched.state_.alpha = std::stod(need("alpha"));
  sched.state_.theta = std::stod(need("theta"));
  sched.state_.t = std::stoull(need("t"));
  sched.state_.drop_pending = need("drop_pending") == "1";
  sched.state_.k = std::stoull(need("k"));
  sched.state_.z = vec_from_string(need("z"));
  if (auto it = kv.find("prev_omega"); it != kv.end())
    sched.state_.prev_omega = std::stod(it->second);
  if (auto it = kv.find("prev_params"); it != kv.end())
    sched.prev_params_ = vec_from_string(it->second);
  if (auto it = kv.find("prev_step"); it != kv.end())
    sched.prev_step_ = vec_from_string(it->second);
  sched.last_drop_epoch_ = std::stoull(need("last_drop_epoch"));
  sched.any_drop_ = need("any_drop") == "1";
  return sched;
}

NqmAutoDropCurves autodrop_nqm_experiment(const NqmConfig& base,
                                          const NqmAutoDropOptions& opts,
                                          const ParamVector& x0,
                                          std::uint64_t seed) {
  NqmConfig cfg = base;
  cfg.alpha = opts.alpha0;
  cfg.validate();

  NqmState state(x0, seed);
  VelocityTracker tracker(opts.window);

  NqmAutoDropCurves curves;
  curves.loss.reserve(opts.iterations);
  curves.omega_avg.reserve(opts.iterations);
  curves.alpha.reserve(opts.iterations);

  std::optional<double> prev_avg;
  ParamVector prev_x = state.x;
  // Saturation checks start once the window is full so both averages cover
  // the same span.
  for (std::uint64_t it = 0; it < opts.iterations; ++it) {
    prev_x = state.x;
    nqm_step(cfg, state);
    tracker.observe(state.x, prev_x);

    double avg = std::numeric_limits<double>::quiet_NaN();
    if (tracker.has_angle()) avg = tracker.window_average();

    if (tracker.window_size() == opts.window && prev_avg &&
        cfg.alpha > opts.alpha_min &&
        std::abs(avg - *prev_avg) < opts.delta_threshold_deg) {
      cfg.alpha = std::max(opts.alpha_min, opts.rho * cfg.alpha);
    }
    if (tracker.window_size() == opts.window) prev_avg = avg;

    curves.loss.push_back(nqm_loss(cfg, state.x));
    curves.omega_avg.push_back(avg);
    curves.alpha.push_back(cfg.alpha);
  }
  return curves;
}

}  // namespace adlab
