#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>

#include "adlab/vec.hpp"

namespace adlab {

struct NotReadyError : std::logic_error {
  using std::logic_error::logic_error;
};

// Guard added to the norm product before dividing; keeps zero steps from
// producing NaN (they report 90 degrees instead).
constexpr double kAngleEpsilon = 1e-12;

// Angle between two vectors in degrees, always in [0, 180]. The cosine is
// clamped to [-1, 1] before arccos since rounding can push it past 1 even
// with the epsilon guard.
double angle_between_degrees(const ParamVector& a, const ParamVector& b);

// Sliding angular-velocity state: turns consecutive parameter snapshots into
// steps, steps into angles, and keeps a window of the most recent W angles.
// W = 20 for iteration-level NQM tracking, W = 1 for epoch-level tracking
// where the scheduler compares raw consecutive values.
class VelocityTracker {
 public:
  explicit VelocityTracker(std::size_t window_capacity)
      : capacity_(window_capacity) {
    if (window_capacity == 0)
      throw std::invalid_argument("VelocityTracker: window capacity must be >= 1");
  }

  // Feeds the step new_params - old_params. Returns the angle to the
  // previous step once one exists.
  std::optional<double> observe(const ParamVector& new_params,
                                const ParamVector& old_params);

  // Feeds an already-formed step vector.
  std::optional<double> observe_step(ParamVector step);

  // Arithmetic mean of the angles currently in the window.
  double window_average() const;

  std::size_t window_size() const { return window_.size(); }
  std::size_t window_capacity() const { return capacity_; }
  bool has_angle() const { return !window_.empty(); }

  // Number of zero-length steps seen so far (each reported as 90 degrees).
  std::size_t degenerate_steps() const { return degenerate_steps_; }

 private:
  std::size_t capacity_;
  std::optional<ParamVector> prev_step_;
  std::deque<double> window_;
  std::size_t degenerate_steps_ = 0;
};

}  // namespace adlab
