#include "definetti/kernels.hpp"

#include <cstdlib>
#include <string>

namespace definetti::kernels {

bool avx2_available() {
#if defined(DEFINETTI_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Isa active_isa() {
    static const Isa isa = [] {
        const char* env = std::getenv("DEFINETTI_KERNEL");
        if (env && std::string(env) == "scalar") return Isa::scalar;
        return avx2_available() ? Isa::avx2 : Isa::scalar;
    }();
    return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

MulAddFn mul_add_fn(Isa isa) {
#if defined(DEFINETTI_HAVE_AVX2)
    if (isa == Isa::avx2 && avx2_available()) return &avx2::mul_add;
#endif
    (void)isa;
    return &scalar::mul_add;
}

MulAddFn mul_add_fn() {
    static const MulAddFn f = mul_add_fn(active_isa());
    return f;
}

}  // namespace definetti::kernels
