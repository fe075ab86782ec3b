#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adlab/angular_velocity.hpp"
#include "adlab/noisy_quadratic.hpp"
#include "adlab/vec.hpp"

namespace adlab {

struct AutoDropConfig {
  double alpha0 = 0.1;      // initial learning rate
  double alpha_min = 1e-4;  // learning-rate floor
  double theta0 = 0.01;     // initial velocity-change threshold, degrees
  double theta_max = 1.0;   // threshold ceiling, degrees
  double rho = 0.5;         // drop factor, in (0, 1)
  std::uint64_t n_d = 20;   // drop delay, epochs
  // Extension, off by default: epochs to wait after a completed drop before
  // the saturation test may fire again. The published procedure re-arms
  // immediately.
  std::uint64_t cooldown_epochs = 0;

  void validate() const;
};

struct AutoDropState {
  double alpha;
  double theta;
  std::uint64_t t = 0;  // completed epochs
  std::optional<double> prev_omega;
  bool drop_pending = false;
  ParamVector z;        // scaled-parameter accumulator for the delay window
  std::uint64_t k = 0;  // delay counter
};

// Outcome of one epoch observation. params_override is present exactly when
// a drop completed this epoch: the triangular weighted average
// sum_{k=1..n_d} k x_k * 2/((n_d+1) n_d) replaces the model parameters.
struct EpochDecision {
  double alpha_for_next_epoch;
  std::optional<ParamVector> params_override;
  bool dropped = false;
};

// The automatic learning-rate-drop state machine. Feed it the parameter
// vector at the end of every training epoch; it watches the per-epoch
// angular velocity, and once the change between consecutive values falls
// below the threshold it runs the n_d-epoch averaging window, substitutes
// the averaged parameters, drops alpha and raises the threshold.
class AutoDropScheduler {
 public:
  explicit AutoDropScheduler(AutoDropConfig cfg);

  EpochDecision observe_epoch(const ParamVector& epoch_end_params);

  const AutoDropConfig& config() const { return cfg_; }
  const AutoDropState& state() const { return state_; }
  double alpha() const { return state_.alpha; }
  double theta() const { return state_.theta; }
  std::optional<double> last_omega() const { return state_.prev_omega; }

  // Flat key-value snapshot for checkpoint/resume.
  std::map<std::string, std::string> snapshot() const;
  static AutoDropScheduler restore(
      AutoDropConfig cfg, const std::map<std::string, std::string>& kv);

 private:
  AutoDropConfig cfg_;
  AutoDropState state_;
  // Step bookkeeping for the raw consecutive omega values (window W = 1).
  std::optional<ParamVector> prev_params_;
  std::optional<ParamVector> prev_step_;
  std::uint64_t last_drop_epoch_ = 0;
  bool any_drop_ = false;
};

// Curves from the iteration-level NQM experiment: the learning rate is
// halved whenever the 20-iteration window average of the angular velocity
// changes by less than the threshold between two consecutive iterations.
// No drop delay and no parameter averaging in this variant.
struct NqmAutoDropCurves {
  std::vector<double> loss;       // expected loss per iteration
  std::vector<double> omega_avg;  // window-averaged angle, NaN until ready
  std::vector<double> alpha;      // learning rate per iteration
};

struct NqmAutoDropOptions {
  double alpha0 = 0.06;
  double alpha_min = 0.001;
  double rho = 0.5;
  std::size_t window = 20;
  double delta_threshold_deg = 0.01;
  std::uint64_t iterations = 30000;
};

NqmAutoDropCurves autodrop_nqm_experiment(const NqmConfig& base,
                                          const NqmAutoDropOptions& opts,
                                          const ParamVector& x0,
                                          std::uint64_t seed);

}  // namespace adlab
