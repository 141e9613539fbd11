#pragma once

#include "cpqls/matcore/dense_matrix.hpp"
#include "cpqls/matcore/tolerances.hpp"

namespace cpqls {

// One-sided (Hestenes) Jacobi SVD. Deterministic; singular vectors are
// gauge-fixed so the first component of each right singular vector with
// modulus above 1e-8 is real and positive.
Svd svd(const DenseMatrix& a);
Svd svd(const CMatrix& a);

struct ConditionNumber {
  double value = 0.0;  // +inf when singular
  bool singular = false;
};

ConditionNumber condition_number(const DenseMatrix& a,
                                 double rank_tol = kDefaultTolerances.rank);

}  // namespace cpqls
