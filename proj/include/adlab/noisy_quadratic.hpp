#pragma once

#include <cstdint>
#include <stdexcept>

#include "adlab/rng.hpp"
#include "adlab/vec.hpp"

namespace adlab {

struct DegenerateNoiseError : std::domain_error {
  using std::domain_error::domain_error;
};

// Noisy quadratic model: L(x) = 1/2 (x-c)^T A (x-c) with c ~ N(0, Sigma),
// A and Sigma diagonal, optimum at 0.
struct NqmConfig {
  ParamVector a;       // diagonal of A, all > 0
  ParamVector sigma2;  // diagonal of Sigma, all >= 0
  double alpha = 0.0;  // learning rate

  std::size_t dim() const { return a.size(); }
  double max_a() const;
  double min_a() const;

  // Throws std::invalid_argument if shapes or signs are off, or if the
  // variance recursion is not a contraction (alpha * max a must be < 2;
  // the steady-state angle bracket [90, 120] additionally needs < 1).
  void validate() const;

  // The running reference diagonal: a_i = i/10 for i = 1..d, unit noise.
  static NqmConfig reference_config(double alpha, std::size_t d = 200);
};

struct NqmState {
  ParamVector x;
  std::uint64_t t = 0;
  GaussianStream rng;

  NqmState(ParamVector x0, std::uint64_t seed)
      : x(std::move(x0)), rng(seed) {}
};

// Closed-form steady-state quantities of the NQM under gradient descent.
struct NqmOracle {
  double i_star;        // lim E<s_t, s_{t+1}>
  double n_star;        // lim E||s_t||^2
  double c_star;        // i_star / n_star (approximate expected cosine)
  double angle_star;    // arccos(c_star), degrees
  ParamVector v_star;   // per-coordinate steady-state variance of x
};

// Monte Carlo tail averages matching the oracle's limits.
struct NqmEmpiricalLimits {
  double i_hat;          // mean <s_t, s_{t+1}>
  double n_hat;          // mean ||s_t||^2
  double c_hat;          // i_hat / n_hat (the oracle's ratio approximation)
  double c_hat_direct;   // mean of per-sample cosines, for measuring the
                         // approximation error of the ratio form
  ParamVector var_hat;   // per-coordinate variance of x over the tail
};

// Expected loss minus noise floor: 1/2 sum a_i x_i^2.
double nqm_loss(const NqmConfig& cfg, const ParamVector& x);

// One GD step: x <- x - alpha A (x - c), c ~ N(0, Sigma).
void nqm_step(const NqmConfig& cfg, NqmState& state);

NqmOracle nqm_oracle(const NqmConfig& cfg);

// Default burn-in: ten slowest-mode time constants.
std::uint64_t nqm_default_burn_in(const NqmConfig& cfg);

NqmEmpiricalLimits nqm_empirical_limits(const NqmConfig& cfg,
                                        std::uint64_t burn_in,
                                        std::uint64_t samples,
                                        std::uint64_t seed,
                                        const ParamVector* x0 = nullptr);

}  // namespace adlab
