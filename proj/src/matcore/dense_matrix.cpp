#include "cpqls/matcore/dense_matrix.hpp"

#include "cpqls/matcore/error.hpp"
#include "cpqls/matcore/svd.hpp"

namespace cpqls {

DenseMatrix::DenseMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw Error(ErrorKind::dimension, "DenseMatrix: expected a nonempty square matrix, got " +
                                          std::to_string(entries_.rows()) + "x" +
                                          std::to_string(entries_.cols()));
  if (!all_finite(entries_))
    throw Error(ErrorKind::non_finite, "DenseMatrix: non-finite entry");
  frob_ = entries_.norm();
}

DenseMatrix DenseMatrix::identity(Index n) {
  return DenseMatrix(CMatrix::Identity(n, n));
}

DenseMatrix DenseMatrix::diagonal(std::span<const cplx> d) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  for (std::size_t k = 0; k < d.size(); ++k) m(static_cast<Index>(k), static_cast<Index>(k)) = d[k];
  return DenseMatrix(std::move(m));
}

DenseMatrix DenseMatrix::diagonal(const CVector& d) {
  return DenseMatrix(CMatrix(d.asDiagonal()));
}

Svd DenseMatrix::svd() const {
  if (svd_) return *svd_;
  return cpqls::svd(entries_);
}

DenseMatrix DenseMatrix::with_svd() const {
  DenseMatrix out = *this;
  if (!out.svd_) out.svd_ = cpqls::svd(entries_);
  return out;
}

}  // namespace cpqls
