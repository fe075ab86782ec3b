#pragma once

#include <cstddef>
#include <string_view>

// Dense double-precision vector kernels used by every inner loop in the
// library. A scalar reference implementation always exists; an AVX2 variant
// is selected at startup when the CPU supports it. The AVX2 variants use
// mul/add (no FMA) so elementwise ops are bit-identical to the scalar path;
// reductions (dot, nrm2sq) differ only in summation order.
//
// Set ADLAB_KERNELS=scalar|avx2 to force a backend (avx2 falls back to
// scalar with a warning if unsupported).

namespace adlab::kernels {

// out[i] = a[i] - b[i]
void sub(const double* a, const double* b, double* out, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

// x[i] *= alpha
void scal(double alpha, double* x, std::size_t n);

double dot(const double* a, const double* b, std::size_t n);

double nrm2sq(const double* a, std::size_t n);

// Name of the active backend ("scalar" or "avx2").
std::string_view active_backend();

namespace detail {

struct Backend {
  void (*sub)(const double*, const double*, double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*nrm2sq)(const double*, std::size_t);
  const char* name;
};

extern const Backend scalar_backend;
#if defined(__x86_64__) || defined(_M_X64)
extern const Backend avx2_backend;
#endif

const Backend& active();

}  // namespace detail

inline void sub(const double* a, const double* b, double* out, std::size_t n) {
  detail::active().sub(a, b, out, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  detail::active().axpy(alpha, x, y, n);
}
inline void scal(double alpha, double* x, std::size_t n) {
  detail::active().scal(alpha, x, n);
}
inline double dot(const double* a, const double* b, std::size_t n) {
  return detail::active().dot(a, b, n);
}
inline double nrm2sq(const double* a, std::size_t n) {
  return detail::active().nrm2sq(a, n);
}
inline std::string_view active_backend() { return detail::active().name; }

}  // namespace adlab::kernels
