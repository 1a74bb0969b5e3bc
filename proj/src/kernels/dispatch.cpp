#include <cstdlib>
#include <stdexcept>
#include <string>

#include "uqsim/kernels.hpp"

namespace uqsim::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(UQSIM_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() {
  if (const char* forced = std::getenv("UQSIM_ISA")) {
    if (std::string(forced) == "scalar") return scalar_table();
  }
  if (isa_available(Isa::avx2)) return table_for(Isa::avx2);
  return scalar_table();
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2: {
      static const bool ok = cpu_has_avx2();
      return ok;
    }
  }
  return false;
}

const KernelTable& table_for(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
  }
#if defined(UQSIM_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  return scalar_table();
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (isa_available(Isa::avx2)) out.push_back(&table_for(Isa::avx2));
  return out;
}

}  // namespace uqsim::kernels
