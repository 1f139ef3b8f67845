#include <atomic>

#include "qmp/errors.hpp"
#include "qmp/simd/kernels.hpp"

namespace qmp::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend detect() {
  return (avx2::compiled() && cpu_has_avx2()) ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

Backend active_backend() { return current().load(std::memory_order_relaxed); }

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return avx2::compiled() && cpu_has_avx2();
}

void force_backend(Backend b) {
  if (!backend_available(b)) throw DomainError("force_backend: backend not available");
  current().store(b);
}

void reset_backend() { current().store(detect()); }

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void log_christoffel_sum(const double* diag, const double* off, std::size_t n, const double* xs,
                         std::size_t m, double* out) {
  if (active_backend() == Backend::avx2)
    avx2::log_christoffel_sum(diag, off, n, xs, m, out);
  else
    scalar::log_christoffel_sum(diag, off, n, xs, m, out);
}

void newton_ratio(const double* diag, const double* offsq, std::size_t n, const double* xs,
                  std::size_t m, double* out) {
  if (active_backend() == Backend::avx2)
    avx2::newton_ratio(diag, offsq, n, xs, m, out);
  else
    scalar::newton_ratio(diag, offsq, n, xs, m, out);
}

void sturm_count(const double* diag, const double* offsq, std::size_t n, const double* shifts,
                 std::size_t m, std::int64_t* out) {
  if (active_backend() == Backend::avx2)
    avx2::sturm_count(diag, offsq, n, shifts, m, out);
  else
    scalar::sturm_count(diag, offsq, n, shifts, m, out);
}

double compensated_dot(const double* x, const double* y, std::size_t n) {
  if (active_backend() == Backend::avx2) return avx2::compensated_dot(x, y, n);
  return scalar::compensated_dot(x, y, n);
}

}  // namespace qmp::simd
