#include "uqsim/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace uqsim::kernels {
namespace {

void gemm_scalar(std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  std::fill(c, c + n * n, cplx{});
  for (std::size_t j = 0; j < n; ++j) {
    cplx* cj = c + j * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx bkj = b[j * n + k];
      const cplx* ak = a + k * n;
      for (std::size_t i = 0; i < n; ++i) cj[i] += ak[i] * bkj;
    }
  }
}

void axpy_scalar(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

cplx dotc_scalar(std::size_t len, const cplx* x, const cplx* y) {
  cplx acc{};
  for (std::size_t i = 0; i < len; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double max_abs_diff_scalar(std::size_t len, const cplx* x, const cplx* y) {
  double m = 0.0;
  for (std::size_t i = 0; i < len; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

constexpr KernelTable kScalar{Isa::scalar, "scalar", gemm_scalar, axpy_scalar,
                              dotc_scalar, max_abs_diff_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace uqsim::kernels
