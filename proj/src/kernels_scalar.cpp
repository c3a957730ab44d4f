#include "definetti/kernels.hpp"

namespace definetti::kernels::scalar {

void mul_add(const cd* a, const cd* b, cd* c, int d) {
    for (int j = 0; j < d; ++j)
        for (int t = 0; t < d; ++t) {
            const cd bt = b[t + j * d];
            const double br = bt.real(), bi = bt.imag();
            for (int i = 0; i < d; ++i) {
                const cd at = a[i + t * d];
                double re = c[i + j * d].real() + at.real() * br - at.imag() * bi;
                double im = c[i + j * d].imag() + at.real() * bi + at.imag() * br;
                c[i + j * d] = cd(re, im);
            }
        }
}

}  // namespace definetti::kernels::scalar
