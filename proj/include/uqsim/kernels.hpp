#pragma once

// Dense complex kernels used by the q-number arithmetic.
//
// Every routine has a portable scalar reference implementation and, on
// x86-64, an AVX2+FMA variant. The active table is chosen once at first use
// from the host CPU; setting UQSIM_ISA=scalar in the environment forces the
// reference path. Matrices are square, column-major, interleaved (re, im).

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace uqsim::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // c = a * b for n x n column-major matrices; c must not alias a or b.
  void (*gemm)(std::size_t n, const cplx* a, const cplx* b, cplx* c);
  // y += alpha * x
  void (*axpy)(std::size_t len, cplx alpha, const cplx* x, cplx* y);
  // sum_k conj(x_k) * y_k
  cplx (*dotc)(std::size_t len, const cplx* x, const cplx* y);
  // max_k |x_k - y_k|
  double (*max_abs_diff)(std::size_t len, const cplx* x, const cplx* y);
};

const KernelTable& scalar_table();

// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

// Table for a specific ISA; throws std::invalid_argument if unavailable.
const KernelTable& table_for(Isa isa);

// The table selected for this process.
const KernelTable& active();

// Every table usable on this host (scalar first).
std::vector<const KernelTable*> available_tables();

std::string_view isa_name(Isa isa);

namespace detail {
#if defined(UQSIM_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table();
#endif
}  // namespace detail

}  // namespace uqsim::kernels
