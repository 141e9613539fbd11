#pragma once

#include <random>

#include "cpqls/matcore/dense_matrix.hpp"
#include "cpqls/matcore/toeplitz.hpp"

namespace cpqls {

using Rng = std::mt19937_64;

// Entries with independent standard normal real and imaginary parts.
CVector random_complex_vector(Index n, Rng& rng);
CVector random_unit_vector(Index n, Rng& rng);
CMatrix random_complex_matrix(Index n, Rng& rng);
// Haar-ish unitary from the QR factor of a Gaussian matrix.
CMatrix random_unitary(Index n, Rng& rng);
// U diag(sigma) V^dagger with log-uniform sigma in [1, kappa].
CMatrix random_with_condition(Index n, double kappa, Rng& rng);

ToeplitzSpec random_toeplitz(Index n, Rng& rng, bool hermitian = false);
CVector random_circulant_column(Index n, Rng& rng);

}  // namespace cpqls
