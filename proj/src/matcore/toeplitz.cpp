#include "cpqls/matcore/toeplitz.hpp"

#include <cstdlib>

#include "cpqls/matcore/error.hpp"

namespace cpqls {

ToeplitzSpec::ToeplitzSpec(Index n, std::vector<cplx> diag_coeffs) : n_(n), coeffs_(std::move(diag_coeffs)) {
  if (n <= 0) throw Error(ErrorKind::dimension, "ToeplitzSpec: n must be positive");
  if (static_cast<Index>(coeffs_.size()) != 2 * n - 1)
    throw Error(ErrorKind::dimension, "ToeplitzSpec: expected 2n-1 diagonal coefficients");
  for (cplx z : coeffs_)
    if (!is_finite(z)) throw Error(ErrorKind::non_finite, "ToeplitzSpec: non-finite coefficient");
}

ToeplitzSpec ToeplitzSpec::from_map(Index n, const std::map<int, cplx>& t) {
  if (n <= 0) throw Error(ErrorKind::dimension, "ToeplitzSpec: n must be positive");
  std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1), cplx(0.0));
  for (const auto& [k, value] : t) {
    if (std::abs(k) > n - 1)
      throw Error(ErrorKind::index_out_of_range,
                  "ToeplitzSpec: diagonal " + std::to_string(k) + " outside a " + std::to_string(n) + "x" +
                      std::to_string(n) + " matrix");
    c[static_cast<std::size_t>(k + n - 1)] = value;
  }
  return ToeplitzSpec(n, std::move(c));
}

ToeplitzSpec ToeplitzSpec::from_matrix(const DenseMatrix& a) {
  const Index n = a.n();
  std::vector<cplx> c(static_cast<std::size_t>(2 * n - 1));
  for (Index k = 1 - n; k <= n - 1; ++k) {
    const Index i0 = k >= 0 ? k : 0;
    const Index j0 = i0 - k;
    c[static_cast<std::size_t>(k + n - 1)] = a(i0, j0);
  }
  ToeplitzSpec spec(n, std::move(c));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (a(i, j) != spec.t(i - j))
        throw Error(ErrorKind::parse, "ToeplitzSpec::from_matrix: matrix is not constant along diagonals");
  return spec;
}

cplx ToeplitzSpec::t(Index k) const {
  if (k <= -n_ || k >= n_) throw Error(ErrorKind::index_out_of_range, "ToeplitzSpec::t: diagonal out of range");
  return coeffs_[static_cast<std::size_t>(k + n_ - 1)];
}

bool ToeplitzSpec::is_hermitian() const {
  for (Index k = 0; k < n_; ++k)
    if (t(-k) != std::conj(t(k))) return false;
  return true;
}

DenseMatrix ToeplitzSpec::materialize() const {
  CMatrix m(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) m(i, j) = t(i - j);
  return DenseMatrix(std::move(m));
}

int SymbolSpec::bandwidth() const {
  int k = 0;
  for (const auto& [idx, value] : coeffs) k = std::max(k, std::abs(idx));
  return k;
}

ToeplitzSpec toeplitz_from_symbol(const SymbolSpec& s, Index n) {
  if (n <= 0) throw Error(ErrorKind::dimension, "toeplitz_from_symbol: n must be positive");
  std::map<int, cplx> t;
  for (const auto& [k, value] : s.coeffs)
    if (std::abs(k) <= n - 1) t[k] = value;
  return ToeplitzSpec::from_map(n, t);
}

SymbolSpec laplacian_symbol() { return SymbolSpec{{{-1, -1.0}, {0, 2.0}, {1, -1.0}}}; }

SymbolSpec shifted_cosine_symbol() { return SymbolSpec{{{-1, 0.5}, {0, 2.0}, {1, 0.5}}}; }

ToeplitzSpec laplacian_1d(Index n) { return toeplitz_from_symbol(laplacian_symbol(), n); }

}  // namespace cpqls
