#include "cpqls/precond/circulant.hpp"

#include <cmath>

#include "cpqls/matcore/error.hpp"
#include "cpqls/matcore/fft.hpp"
#include "cpqls/matcore/io.hpp"

namespace cpqls {

CirculantSpec CirculantSpec::from_first_column(CVector c) {
  if (c.size() == 0) throw Error(ErrorKind::dimension, "circulant: empty first column");
  if (!all_finite(c)) throw Error(ErrorKind::non_finite, "circulant: non-finite first column");
  CVector lambda = circulant_eigenvalues(c);
  return CirculantSpec(std::move(c), std::move(lambda));
}

CirculantSpec CirculantSpec::from_eigenvalues(CVector lambda) {
  if (lambda.size() == 0) throw Error(ErrorKind::dimension, "circulant: empty eigenvalue vector");
  if (!all_finite(lambda)) throw Error(ErrorKind::non_finite, "circulant: non-finite eigenvalues");
  // c = F^dagger lambda / sqrt(n)
  CVector c = ifft(lambda) / std::sqrt(static_cast<double>(lambda.size()));
  return CirculantSpec(std::move(c), std::move(lambda));
}

CirculantSpec CirculantSpec::identity(Index n) {
  CVector c = CVector::Zero(n);
  c(0) = 1.0;
  return from_first_column(std::move(c));
}

DenseMatrix CirculantSpec::materialize() const {
  const Index n = this->n();
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = c_(((i - j) % n + n) % n);
  return DenseMatrix(std::move(m));
}

double CirculantSpec::frobenius() const { return lambda_.norm(); }

std::optional<Index> CirculantSpec::singular_index(double rel_tol) const {
  const double threshold = rel_tol * max_abs_eigval();
  for (Index k = 0; k < n(); ++k)
    if (std::abs(lambda_(k)) < threshold || lambda_(k) == cplx(0.0)) return k;
  return std::nullopt;
}

DenseMatrix shift_permutation(Index n) {
  CMatrix q = CMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) q((j + 1) % n, j) = 1.0;
  return DenseMatrix(std::move(q));
}

CVector circulant_eigenvalues(const CVector& c) { return dft_sum(c); }

CVector apply_circulant(const CirculantSpec& c, const CVector& v) {
  if (v.size() != c.n()) throw Error(ErrorKind::dimension, "circulant apply: size mismatch");
  return ifft(c.eigvals().cwiseProduct(fft(v)));
}

CVector apply_circulant_inverse(const CirculantSpec& c, const CVector& v, double rel_tol) {
  if (v.size() != c.n()) throw Error(ErrorKind::dimension, "circulant inverse: size mismatch");
  if (auto k = c.singular_index(rel_tol))
    throw Error(ErrorKind::singular, "circulant is singular: eigenvalue " + std::to_string(*k) + " vanishes");
  return ifft(fft(v).cwiseQuotient(c.eigvals()));
}

CMatrix circulant_inverse_times(const CirculantSpec& c, const CMatrix& a, double rel_tol) {
  CMatrix out(a.rows(), a.cols());
  for (Index j = 0; j < a.cols(); ++j) out.col(j) = apply_circulant_inverse(c, a.col(j), rel_tol);
  return out;
}

nlohmann::json circulant_to_json(const CirculantSpec& c) {
  return {{"n", c.n()},
          {"first_col", io::vector_to_json(c.first_col())["values"]},
          {"eigvals", io::vector_to_json(c.eigvals())["values"]}};
}

}  // namespace cpqls
