#pragma once

#include <optional>

#include <json.hpp>

#include "cpqls/matcore/dense_matrix.hpp"
#include "cpqls/matcore/tolerances.hpp"

namespace cpqls {

// Circulant C = sum_j c_j Q^j = F^dagger diag(lambda) F, where Q is the
// cyclic down-shift (Q e_j = e_{j+1 mod n}) and lambda_k = sum_j c_j w^{jk}.
class CirculantSpec {
 public:
  static CirculantSpec from_first_column(CVector c);
  static CirculantSpec from_eigenvalues(CVector lambda);
  static CirculantSpec identity(Index n);

  Index n() const { return c_.size(); }
  const CVector& first_col() const { return c_; }
  const CVector& eigvals() const { return lambda_; }

  DenseMatrix materialize() const;
  // ||C||_F = sqrt(sum_k |lambda_k|^2).
  double frobenius() const;
  double max_abs_eigval() const { return lambda_.cwiseAbs().maxCoeff(); }
  // Index of the first eigenvalue with |lambda_k| < rel_tol * max|lambda|.
  std::optional<Index> singular_index(double rel_tol = kDefaultTolerances.circulant_singular) const;

 private:
  CirculantSpec(CVector c, CVector lambda) : c_(std::move(c)), lambda_(std::move(lambda)) {}
  CVector c_;
  CVector lambda_;
};

DenseMatrix shift_permutation(Index n);

// lambda_k = sum_j c_j w^{jk}, via FFT.
CVector circulant_eigenvalues(const CVector& c);

CVector apply_circulant(const CirculantSpec& c, const CVector& v);
// F^dagger diag(1/lambda) F v; throws ErrorKind::singular when some
// |lambda_k| < rel_tol * max|lambda|.
CVector apply_circulant_inverse(const CirculantSpec& c, const CVector& v,
                                double rel_tol = kDefaultTolerances.circulant_singular);
// C^{-1} A column by column.
CMatrix circulant_inverse_times(const CirculantSpec& c, const CMatrix& a,
                                double rel_tol = kDefaultTolerances.circulant_singular);

nlohmann::json circulant_to_json(const CirculantSpec& c);

}  // namespace cpqls
