#pragma once

#include "cpqls/qsim/state_vector.hpp"
#include "cpqls/matcore/dense_matrix.hpp"

namespace cpqls {

struct EigenvalueStateResult {
  // Post-selected (k, k) registers, normalized: sum_k lambda_k |k,k> / ||C||_F.
  StateVector state = StateVector::single(CVector::Ones(1), "k");
  CVector lambda_state;        // the |k,k> amplitudes
  CVector eigvals;             // lambda_k = ||A||_F * unnormalized amplitude
  double success_prob = 0.0;   // ||C||_F^2 / ||A||_F^2
  double amplitude_ratio = 0.0;// ||C||_F / ||A||_F, the success amplitude
  double norm_estimate = 0.0;  // ||C||_F = ||A||_F sqrt(success_prob)
};

// Prepares |A> from the storage tree, applies F to the row register and
// conj(F) to the column register, writes (u - v) mod n into a third register
// and post-selects it on 0. The surviving amplitudes are the eigenvalues of
// the optimal circulant of A divided by ||A||_F.
// Throws ErrorKind::empty_postselection when ||C||_F vanishes.
EigenvalueStateResult eigenvalue_state(const DenseMatrix& a);

}  // namespace cpqls
