#include "definetti/kernels.hpp"

#include <immintrin.h>

namespace definetti::kernels::avx2 {

namespace {

// two interleaved complex values times a broadcast complex scalar
inline __m256d cmul(__m256d a, __m256d br, __m256d bi) {
    __m256d swapped = _mm256_permute_pd(a, 0b0101);
    return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(swapped, bi));
}

}  // namespace

void mul_add(const cd* a, const cd* b, cd* c, int d) {
    const double* ad = reinterpret_cast<const double*>(a);
    double* cdp = reinterpret_cast<double*>(c);
    const int pairs = d / 2;
    for (int j = 0; j < d; ++j) {
        double* col = cdp + 2 * j * d;
        for (int t = 0; t < d; ++t) {
            const cd bt = b[t + j * d];
            const __m256d br = _mm256_set1_pd(bt.real());
            const __m256d bi = _mm256_set1_pd(bt.imag());
            const double* acol = ad + 2 * t * d;
            for (int p = 0; p < pairs; ++p) {
                __m256d av = _mm256_loadu_pd(acol + 4 * p);
                __m256d cv = _mm256_loadu_pd(col + 4 * p);
                _mm256_storeu_pd(col + 4 * p, _mm256_add_pd(cv, cmul(av, br, bi)));
            }
            if (d & 1) {
                const int i = d - 1;
                __m128d av = _mm_loadu_pd(acol + 2 * i);
                __m128d sw = _mm_permute_pd(av, 0b01);
                __m128d prod = _mm_fmaddsub_pd(av, _mm_set1_pd(bt.real()), _mm_mul_pd(sw, _mm_set1_pd(bt.imag())));
                _mm_storeu_pd(col + 2 * i, _mm_add_pd(_mm_loadu_pd(col + 2 * i), prod));
            }
        }
    }
}

}  // namespace definetti::kernels::avx2
