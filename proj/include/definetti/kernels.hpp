#pragma once

#include <complex>
#include <string_view>

namespace definetti::kernels {

using cd = std::complex<double>;

// c += a * b for square column-major d x d complex matrices
using MulAddFn = void (*)(const cd* a, const cd* b, cd* c, int d);

namespace scalar {
void mul_add(const cd* a, const cd* b, cd* c, int d);
}

#if defined(DEFINETTI_HAVE_AVX2)
namespace avx2 {
void mul_add(const cd* a, const cd* b, cd* c, int d);
}
#endif

enum class Isa { scalar, avx2 };

bool avx2_available();
Isa active_isa();
std::string_view isa_name(Isa isa);

// resolved once; DEFINETTI_KERNEL=scalar forces the reference path
MulAddFn mul_add_fn();
MulAddFn mul_add_fn(Isa isa);

}  // namespace definetti::kernels
