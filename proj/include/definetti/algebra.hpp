#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace definetti {

using cd = std::complex<double>;

inline constexpr int kMaxCoeffDim = 3;

// element of the coefficient algebra B = M_p, p <= 3 (p = 1 is the scalar case)
using Coeff = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxCoeffDim, kMaxCoeffDim>;

// matrix entry of a representation, or any dense complex matrix
using Block = Eigen::MatrixXcd;

inline Coeff coeff_identity(int p) { return Coeff::Identity(p, p); }
inline Coeff coeff_scalar(cd z, int p = 1) { return Coeff::Identity(p, p) * z; }

inline double max_abs(const Coeff& c) { return c.size() ? c.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const Block& b) { return b.size() ? b.cwiseAbs().maxCoeff() : 0.0; }

// c += a * b for square blocks of equal size, through the dispatched kernel
void block_mul_add(const Block& a, const Block& b, Block& c);
Block block_mul(const Block& a, const Block& b);

// largest singular value
double operator_norm(const Block& x);

Block kronecker(const Block& a, const Block& b);

Block random_gaussian(int rows, int cols, std::mt19937_64& rng);
Block random_unitary(int n, std::mt19937_64& rng);

}  // namespace definetti
