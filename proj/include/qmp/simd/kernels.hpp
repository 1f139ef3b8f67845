#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops. Each kernel has a scalar reference and an AVX2 variant that
// performs the same IEEE operations per lane, so both give bitwise identical results
// (compensated_dot excepted: its lanes sum in a different order).
namespace qmp::simd {

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
// pins the backend (tests); DomainError if it is not available on this CPU
void force_backend(Backend b);
void reset_backend();
const char* backend_name(Backend b);

// Orthonormal recurrence x P_k = off[k+1] P_{k+1} + diag[k] P_k + off[k] P_{k-1}, P_0 = 1.
// out[i] = log sum_{k<n} P_k(xs[i])^2. diag needs n entries, off needs n (off[0] unused).
void log_christoffel_sum(const double* diag, const double* off, std::size_t n, const double* xs,
                         std::size_t m, double* out);

// Monic recurrence P_{k+1} = (x - diag[k]) P_k - offsq[k] P_{k-1}; out[i] = P_n / P_n'
// at xs[i]. diag needs n entries, offsq needs n (offsq[0] unused).
void newton_ratio(const double* diag, const double* offsq, std::size_t n, const double* xs,
                  std::size_t m, double* out);

// out[i] = number of eigenvalues of the n x n Jacobi matrix strictly below shifts[i].
void sturm_count(const double* diag, const double* offsq, std::size_t n, const double* shifts,
                 std::size_t m, std::int64_t* out);

double compensated_dot(const double* x, const double* y, std::size_t n);

namespace scalar {
void log_christoffel_sum(const double*, const double*, std::size_t, const double*, std::size_t,
                         double*);
void newton_ratio(const double*, const double*, std::size_t, const double*, std::size_t, double*);
void sturm_count(const double*, const double*, std::size_t, const double*, std::size_t,
                 std::int64_t*);
double compensated_dot(const double*, const double*, std::size_t);
}  // namespace scalar

namespace avx2 {
bool compiled();
void log_christoffel_sum(const double*, const double*, std::size_t, const double*, std::size_t,
                         double*);
void newton_ratio(const double*, const double*, std::size_t, const double*, std::size_t, double*);
void sturm_count(const double*, const double*, std::size_t, const double*, std::size_t,
                 std::int64_t*);
double compensated_dot(const double*, const double*, std::size_t);
}  // namespace avx2

// shared constants: rescaling by exact powers of two keeps both variants in lockstep
inline constexpr double kBig = 0x1p400;
inline constexpr double kSmall = 0x1p-400;
inline constexpr double kPivMin = 0x1p-900;

}  // namespace qmp::simd
