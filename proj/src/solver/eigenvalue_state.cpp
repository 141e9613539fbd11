#include "cpqls/solver/eigenvalue_state.hpp"

#include <cmath>

#include "cpqls/matcore/error.hpp"
#include "cpqls/matcore/fft.hpp"
#include "cpqls/qsim/kp_tree.hpp"

namespace cpqls {

EigenvalueStateResult eigenvalue_state(const DenseMatrix& a) {
  const Index n = a.n();
  if (!(a.frobenius() > 0.0)) throw Error(ErrorKind::domain, "eigenvalue_state: A must be nonzero");
  const KPTree tree = kp_build(a);
  const StateVector start = matrix_state(tree);

  // (row, col) amplitudes as an n x n array, then F on the row register and
  // conj(F) on the column register: Y = F X F^dagger.
  CMatrix x(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) x(i, j) = start.amps()(i * n + j);
  const CMatrix f = fourier_matrix(n).entries();
  const CMatrix y = f * x * f.adjoint();

  // |u, v> -> |u, v, (u - v) mod n>, then keep difference 0.
  CVector kept = CVector::Zero(n * n);
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v)
      if ((u - v + n) % n == 0) kept(u * n + v) = y(u, v);

  const double frob = std::sqrt(tree.norm_root());  // the root holds ||A||_F^2
  EigenvalueStateResult r;
  r.success_prob = kept.squaredNorm();
  if (r.success_prob <= 1e-300)
    throw Error(ErrorKind::empty_postselection, "eigenvalue_state: optimal circulant is zero");
  r.amplitude_ratio = std::sqrt(r.success_prob);
  r.norm_estimate = frob * r.amplitude_ratio;
  r.state = StateVector({n, n}, {"k", "k2"}, kept / r.amplitude_ratio);
  r.lambda_state = CVector(n);
  r.eigvals = CVector(n);
  for (Index k = 0; k < n; ++k) {
    r.lambda_state(k) = kept(k * n + k) / r.amplitude_ratio;
    r.eigvals(k) = kept(k * n + k) * frob;
  }
  return r;
}

}  // namespace cpqls
