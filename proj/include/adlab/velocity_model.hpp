#pragma once

#include <cstdint>
#include <vector>

#include "adlab/unified_momentum.hpp"

namespace adlab {

// Analytic model of the angular velocity at a fixed learning rate:
//   v_alpha(t) = (pi/2)(1 + eps * alpha)(1 - 1/(gamma alpha (t + 1/(gamma alpha))))
// Angles here are in radians; the measurement modules work in degrees.
struct VelocityModelParams {
  double epsilon = 0.0;    // asymptote factor, in [0, 1/(3 alpha_max))
  double gamma = 1.0;      // curvature factor, > 0
  double alpha_max = 1.0;  // learning-rate upper bound

  void validate() const;
};

double velocity_model(const VelocityModelParams& p, double alpha, double t);

// d/dt of the model: pi (1 + eps alpha) / (2 gamma alpha (t + 1/(gamma alpha))^2)
double velocity_model_derivative(const VelocityModelParams& p, double alpha,
                                 double t);

// Phase length at rate alpha: the time at which the model's derivative
// falls to tau = min(tau0, gamma alpha / 2).
struct DropGap {
  double continuous;     // root of v'(t) = tau
  std::uint64_t integer; // max(1, ceil(continuous)); what the discrete loop produces
  double tau;            // the effective threshold used
};

DropGap drop_gap(const VelocityModelParams& p, double alpha, double tau0);

enum class DecayLaw {
  kInverseIPlusTwo,  // alpha_hat_i = (i+2)^-1; consistent with the gap bounds
  kPowerTwoThirds,   // alpha_hat_i = (i+1)^(-2/3); alternative statement
};

std::vector<double> decay_law_alphas(DecayLaw law, std::size_t n);

struct ApproxDropConfig {
  double tau0 = 0.5;            // initial derivative threshold, < 2
  std::vector<double> alphas;   // positive decreasing
  void validate() const;
};

struct PhasePlan {
  std::vector<double> alphas;            // the schedule's rates, one per phase
  std::vector<std::uint64_t> gaps;       // integer k_i from the discrete loop
  std::vector<double> continuous_gaps;   // closed-form roots
  std::vector<std::uint64_t> boundaries; // t_1 .. t_n
  std::uint64_t total = 0;               // T
  double kappa1 = 0.0;                   // (sqrt(pi) - 1)/gamma
  double kappa2 = 0.0;                   // (1/gamma) sqrt(2 pi / (3 tau0))

  PiecewiseSchedule to_schedule(double alpha_before_first = 1.0) const;
};

// Runs the discrete drop loop: at each iteration of phase i the derivative
// at phase-local time is compared against tau_i; crossing it ends the phase.
PhasePlan plan_drop_phases(const VelocityModelParams& p,
                              const ApproxDropConfig& cfg);

// Total-iteration sandwich: kappa1 n(n+3)/2 <= T <= kappa2 n(n+3)/2 under
// the (i+2)^-1 decay law.
struct TotalIterationBounds {
  double low;
  double high;
};

TotalIterationBounds total_iteration_bounds(double kappa1, double kappa2,
                                   std::uint64_t n);

}  // namespace adlab
