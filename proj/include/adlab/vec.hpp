#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "adlab/kernels.hpp"

namespace adlab {

// Flat parameter vector; the x_t of every update rule in the library.
using ParamVector = std::vector<double>;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void check_same_dim(const ParamVector& a, const ParamVector& b,
                           const char* where) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(where) + ": dimension mismatch (" +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
}

inline double dot(const ParamVector& a, const ParamVector& b) {
  check_same_dim(a, b, "dot");
  return kernels::dot(a.data(), b.data(), a.size());
}

inline double norm_sq(const ParamVector& a) {
  return kernels::nrm2sq(a.data(), a.size());
}

inline double norm(const ParamVector& a) { return std::sqrt(norm_sq(a)); }

// a - b
inline ParamVector sub(const ParamVector& a, const ParamVector& b) {
  check_same_dim(a, b, "sub");
  ParamVector out(a.size());
  kernels::sub(a.data(), b.data(), out.data(), a.size());
  return out;
}

// y += alpha * x
inline void axpy(double alpha, const ParamVector& x, ParamVector& y) {
  check_same_dim(x, y, "axpy");
  kernels::axpy(alpha, x.data(), y.data(), x.size());
}

inline void scale(double alpha, ParamVector& x) {
  kernels::scal(alpha, x.data(), x.size());
}

constexpr double kDegPerRad = 180.0 / 3.14159265358979323846;

inline double rad_to_deg(double r) { return r * kDegPerRad; }
inline double deg_to_rad(double d) { return d / kDegPerRad; }

}  // namespace adlab
