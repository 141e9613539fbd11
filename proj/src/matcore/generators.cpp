#include "cpqls/matcore/generators.hpp"

#include <cmath>

namespace cpqls {

CVector random_complex_vector(Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

CVector random_unit_vector(Index n, Rng& rng) {
  CVector v = random_complex_vector(n, rng);
  return v / v.norm();
}

CMatrix random_complex_matrix(Index n, Rng& rng) {
  CMatrix m(n, n);
  for (Index j = 0; j < n; ++j) m.col(j) = random_complex_vector(n, rng);
  return m;
}

CMatrix random_unitary(Index n, Rng& rng) {
  const CMatrix g = random_complex_matrix(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  // Fix the phases of R's diagonal so the distribution is unitarily invariant.
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const cplx d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

CMatrix random_with_condition(Index n, double kappa, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RVector sigma(n);
  for (Index k = 0; k < n; ++k) sigma(k) = std::pow(kappa, unif(rng));
  sigma(0) = 1.0;
  if (n > 1) sigma(n - 1) = kappa;
  const CMatrix u = random_unitary(n, rng);
  const CMatrix v = random_unitary(n, rng);
  return u * sigma.cast<cplx>().asDiagonal() * v.adjoint();
}

ToeplitzSpec random_toeplitz(Index n, Rng& rng, bool hermitian) {
  const CVector raw = random_complex_vector(2 * n - 1, rng);
  std::vector<cplx> c(raw.data(), raw.data() + raw.size());
  if (hermitian) {
    c[static_cast<std::size_t>(n - 1)] = c[static_cast<std::size_t>(n - 1)].real();
    for (Index k = 1; k < n; ++k)
      c[static_cast<std::size_t>(n - 1 - k)] = std::conj(c[static_cast<std::size_t>(n - 1 + k)]);
  }
  return ToeplitzSpec(n, std::move(c));
}

CVector random_circulant_column(Index n, Rng& rng) { return random_complex_vector(n, rng); }

}  // namespace cpqls
