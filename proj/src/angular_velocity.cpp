#include "adlab/angular_velocity.hpp"

#include <algorithm>
#include <cmath>

namespace adlab {

double angle_between_degrees(const ParamVector& a, const ParamVector& b) {
  check_same_dim(a, b, "angle_between_degrees");
  double cosine = dot(a, b) / (norm(a) * norm(b) + kAngleEpsilon);
  cosine = std::clamp(cosine, -1.0, 1.0);
  return rad_to_deg(std::acos(cosine));
}

std::optional<double> VelocityTracker::observe(const ParamVector& new_params,
                                               const ParamVector& old_params) {
  return observe_step(sub(new_params, old_params));
}

std::optional<double> VelocityTracker::observe_step(ParamVector step) {
  if (prev_step_) check_same_dim(step, *prev_step_, "VelocityTracker::observe");
  if (norm_sq(step) == 0.0) ++degenerate_steps_;

  std::optional<double> angle;
  if (prev_step_) {
    angle = angle_between_degrees(step, *prev_step_);
    window_.push_back(*angle);
    if (window_.size() > capacity_) window_.pop_front();
  }
  prev_step_ = std::move(step);
  return angle;
}

double VelocityTracker::window_average() const {
  if (window_.empty())
    throw NotReadyError("VelocityTracker::window_average: no angle observed yet");
  double sum = 0.0;
  for (double v : window_) sum += v;
  return sum / static_cast<double>(window_.size());
}

}  // namespace adlab
