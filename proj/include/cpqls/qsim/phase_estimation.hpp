#pragma once

#include <vector>

#include "cpqls/matcore/generators.hpp"
#include "cpqls/qsim/state_vector.hpp"

namespace cpqls {

// Textbook phase estimation with T = 2^t outcomes. The phase register is
// appended after the input registers (label "phase"); amplitude on outcome y
// is (1/T) sum_x e^{-2 pi i x y / T} U^x |psi>. Nothing is measured.
// Throws ErrorKind::non_unitary when ||U^dagger U - I||_F > tol.
StateVector phase_estimation(const CMatrix& u, const StateVector& input, int t, double tol = 1e-10);

// Inverse of phase_estimation on a (system, phase) vector stored as a
// dim x T matrix, column y holding the system amplitudes for outcome y:
// QFT on the phase register, controlled U^{-x}, then Walsh-Hadamard.
CMatrix inverse_phase_estimation(const CMatrix& u, const CMatrix& slices);
// Same, with (U^dagger)^{2^b} for b = 0 .. t-1 precomputed.
CMatrix inverse_phase_estimation(const std::vector<CMatrix>& inverse_powers, const CMatrix& slices);
std::vector<CMatrix> inverse_powers_of_two(const CMatrix& u, int t);

// Probability of outcome y for an eigenphase phi (U v = e^{2 pi i phi} v):
// sin^2(pi T d) / (T^2 sin^2(pi d)), d = phi - y/T reduced to [-1/2, 1/2).
double qpe_probability(double phi, Index y, Index T);

// y/T mapped to [-1/2, 1/2): y/T when y < T/2, y/T - 1 otherwise.
double signed_phase(Index y, Index T);
// |signed y| in [0, T/2], the index the value register stores.
Index value_index(Index y, Index T);

// Outcome y maximizing qpe_probability, i.e. round(phi T) mod T.
Index best_outcome(double phi, Index T);

// Median of `shots` seeded draws from the outcome distribution.
Index median_of_shots(const std::vector<double>& probs, Index shots, Rng& rng);

}  // namespace cpqls
