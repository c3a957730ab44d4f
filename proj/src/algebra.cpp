#include "definetti/algebra.hpp"

#include <stdexcept>

#include "definetti/kernels.hpp"

namespace definetti {

void block_mul_add(const Block& a, const Block& b, Block& c) {
    const auto d = a.rows();
    if (a.cols() != d || b.rows() != d || b.cols() != d || c.rows() != d || c.cols() != d)
        throw std::invalid_argument("block_mul_add: shape mismatch");
    if (d == 1) {
        c(0, 0) += a(0, 0) * b(0, 0);
        return;
    }
    kernels::mul_add_fn()(a.data(), b.data(), c.data(), static_cast<int>(d));
}

Block block_mul(const Block& a, const Block& b) {
    Block c = Block::Zero(a.rows(), b.cols());
    if (a.rows() == a.cols() && a.cols() == b.rows() && b.rows() == b.cols())
        block_mul_add(a, b, c);
    else
        c.noalias() = a * b;
    return c;
}

double operator_norm(const Block& x) {
    if (x.size() == 0) return 0.0;
    Eigen::JacobiSVD<Block> svd(x);
    return svd.singularValues()(0);
}

Block kronecker(const Block& a, const Block& b) {
    Block out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Block random_gaussian(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Block m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            double re = g(rng);
            double im = g(rng);
            m(i, j) = cd(re, im);
        }
    return m;
}

Block random_unitary(int n, std::mt19937_64& rng) {
    Block z = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<Block> qr(z);
    Block q = qr.householderQ() * Block::Identity(n, n);
    // fix the phases so the distribution is Haar
    Block r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        double a = std::abs(r(i, i));
        if (a > 0) q.col(i) *= r(i, i) / a;
    }
    return q;
}

}  // namespace definetti
