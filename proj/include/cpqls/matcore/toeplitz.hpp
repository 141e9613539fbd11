#pragma once

#include <map>
#include <vector>

#include "cpqls/matcore/dense_matrix.hpp"

namespace cpqls {

// Toeplitz matrix entry(i, j) = t_{i-j}, stored as t_{1-n} .. t_{n-1}.
class ToeplitzSpec {
 public:
  ToeplitzSpec(Index n, std::vector<cplx> diag_coeffs);
  // Build from a sparse map k -> t_k; missing diagonals are zero.
  static ToeplitzSpec from_map(Index n, const std::map<int, cplx>& t);
  static ToeplitzSpec from_matrix(const DenseMatrix& a);  // throws when not Toeplitz

  Index n() const { return n_; }
  cplx t(Index k) const;
  const std::vector<cplx>& diag_coeffs() const { return coeffs_; }
  bool is_hermitian() const;
  DenseMatrix materialize() const;

 private:
  Index n_;
  std::vector<cplx> coeffs_;
};

// Fourier coefficients t_k of a generating function, k in [-K, K].
struct SymbolSpec {
  std::map<int, cplx> coeffs;

  int bandwidth() const;
};

ToeplitzSpec toeplitz_from_symbol(const SymbolSpec& s, Index n);

// Common families.
SymbolSpec laplacian_symbol();           // 2 - 2 cos(theta)
SymbolSpec shifted_cosine_symbol();      // 2 + cos(theta)
ToeplitzSpec laplacian_1d(Index n);      // tridiag(-1, 2, -1)

}  // namespace cpqls
