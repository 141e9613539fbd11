#pragma once

#include "cpqls/matcore/dense_matrix.hpp"

namespace cpqls {

// F[j][k] = omega^{jk} / sqrt(n), omega = e^{-2 pi i / n}.
DenseMatrix fourier_matrix(Index n);

// Unitary DFT, fft(v) == fourier_matrix(n) * v. Radix-2 for powers of two,
// Bluestein chirp-z otherwise.
CVector fft(const CVector& v);
// Inverse of fft: F^dagger v.
CVector ifft(const CVector& v);

// Unnormalized forward sum: out[k] = sum_j v[j] omega^{jk}.
CVector dft_sum(const CVector& v);

}  // namespace cpqls
