// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached through the
// dispatcher after a CPUID check.
#include "uqsim/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace uqsim::kernels {
namespace {

inline const double* dptr(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(cplx* p) { return reinterpret_cast<double*>(p); }

// acc += x * (br + i bi) for two packed complex values in x.
inline __m256d cmul_acc(__m256d acc, __m256d x, __m256d br, __m256d bi) {
  const __m256d xs = _mm256_permute_pd(x, 0b0101);  // (im, re) pairs
  const __m256d t = _mm256_mul_pd(xs, bi);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(x, br, t));
}

void gemm_avx2(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  const std::size_t pairs = n / 2;
  const bool tail = (n % 2) != 0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx* cj = c + j * n;
    for (std::size_t p = 0; p < pairs; ++p) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) {
        const cplx bkj = b[j * n + k];
        const __m256d br = _mm256_set1_pd(bkj.real());
        const __m256d bi = _mm256_set1_pd(bkj.imag());
        acc = cmul_acc(acc, _mm256_loadu_pd(dptr(a + k * n + 2 * p)), br, bi);
      }
      _mm256_storeu_pd(dptr(cj + 2 * p), acc);
    }
    if (tail) {
      cplx acc{};
      for (std::size_t k = 0; k < n; ++k) acc += a[k * n + n - 1] * b[j * n + k];
      cj[n - 1] = acc;
    }
  }
}

void axpy_avx2(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d yv = _mm256_loadu_pd(dptr(y + i));
    _mm256_storeu_pd(dptr(y + i), cmul_acc(yv, _mm256_loadu_pd(dptr(x + i)), ar, ai));
  }
  for (; i < len; ++i) y[i] += alpha * x[i];
}

cplx dotc_avx2(std::size_t len, const cplx* x, const cplx* y) {
  // re = sum xr*yr + xi*yi, im = sum xr*yi - xi*yr
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dptr(x + i));
    const __m256d yv = _mm256_loadu_pd(dptr(y + i));
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double s[4];
  alignas(32) double q[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(q, cross);
  cplx acc{s[0] + s[1] + s[2] + s[3], q[0] - q[1] + q[2] - q[3]};
  for (; i < len; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double max_abs_diff_avx2(std::size_t len, const cplx* x, const cplx* y) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(dptr(x + i)), _mm256_loadu_pd(dptr(y + i)));
    const __m256d sq = _mm256_mul_pd(d, d);
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double b[4];
  _mm256_store_pd(b, best);
  double m = std::sqrt(std::max(std::max(b[0], b[1]), std::max(b[2], b[3])));
  for (; i < len; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

constexpr KernelTable kAvx2{Isa::avx2, "avx2", gemm_avx2, axpy_avx2, dotc_avx2,
                            max_abs_diff_avx2};

}  // namespace

namespace detail {
const KernelTable& avx2_table() { return kAvx2; }
}  // namespace detail

}  // namespace uqsim::kernels
