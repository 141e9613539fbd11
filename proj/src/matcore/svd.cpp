#include "cpqls/matcore/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "cpqls/matcore/error.hpp"

namespace cpqls {
namespace {

constexpr int kMaxSweeps = 80;
constexpr double kGaugeThreshold = 1e-8;

// Extends the orthonormal columns u[:, 0..filled) to a full unitary basis by
// Gram-Schmidt (applied twice) over the standard basis vectors.
void complete_basis(CMatrix& u, const std::vector<bool>& filled) {
  const Index n = u.rows();
  std::vector<Index> done;
  for (Index j = 0; j < n; ++j)
    if (filled[static_cast<std::size_t>(j)]) done.push_back(j);
  Index candidate = 0;
  for (Index j = 0; j < n; ++j) {
    if (filled[static_cast<std::size_t>(j)]) continue;
    for (; candidate < n; ++candidate) {
      CVector e = CVector::Zero(n);
      e(candidate) = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (Index k : done) e -= u.col(k) * u.col(k).dot(e);
      const double nrm = e.norm();
      if (nrm > 1e-6) {
        u.col(j) = e / nrm;
        done.push_back(j);
        ++candidate;
        break;
      }
    }
  }
}

}  // namespace

Svd svd(const CMatrix& a) {
  const Index n = a.rows();
  if (n == 0 || a.cols() != n) throw Error(ErrorKind::dimension, "svd: expected a nonempty square matrix");
  if (!all_finite(a)) throw Error(ErrorKind::non_finite, "svd: non-finite input");

  CMatrix g = a;
  CMatrix v = CMatrix::Identity(n, n);
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double alpha = g.col(p).squaredNorm();
        const double beta = g.col(q).squaredNorm();
        const cplx gamma = g.col(p).dot(g.col(q));  // a_p^dagger a_q
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Phase-align column q so the inner product becomes real, then apply
        // a real Jacobi rotation to the pair.
        const cplx phase = gamma / mag;
        const double zeta = (beta - alpha) / (2.0 * mag);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const CVector gp = g.col(p);
        const CVector gq = g.col(q) * std::conj(phase);
        g.col(p) = c * gp - s * gq;
        g.col(q) = s * gp + c * gq;
        const CVector vp = v.col(p);
        const CVector vq = v.col(q) * std::conj(phase);
        v.col(p) = c * vp - s * vq;
        v.col(q) = s * vp + c * vq;
      }
    }
    if (!rotated) break;
  }

  RVector sigma(n);
  for (Index j = 0; j < n; ++j) sigma(j) = g.col(j).norm();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return sigma(x) > sigma(y); });

  Svd out{CMatrix::Zero(n, n), RVector(n), CMatrix(n, n)};
  const double smax = sigma.maxCoeff();
  std::vector<bool> filled(static_cast<std::size_t>(n), false);
  for (Index k = 0; k < n; ++k) {
    const Index j = order[static_cast<std::size_t>(k)];
    out.sigma(k) = sigma(j);
    out.V.col(k) = v.col(j);
    if (sigma(j) > 0.0) {
      out.U.col(k) = g.col(j) / sigma(j);
      filled[static_cast<std::size_t>(k)] = true;
    }
  }
  // Columns of G for tiny sigma are not orthogonal to working precision;
  // re-derive them from the well-conditioned ones.
  for (Index k = 0; k < n; ++k) {
    if (filled[static_cast<std::size_t>(k)] && out.sigma(k) < smax * 1e-13) {
      filled[static_cast<std::size_t>(k)] = false;
    }
  }
  complete_basis(out.U, filled);

  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < n; ++i) {
      const cplx z = out.V(i, k);
      if (std::abs(z) > kGaugeThreshold) {
        const cplx fix = std::conj(z) / std::abs(z);
        out.V.col(k) *= fix;
        out.U.col(k) *= fix;
        break;
      }
    }
  }
  return out;
}

Svd svd(const DenseMatrix& a) { return a.svd(); }

ConditionNumber condition_number(const DenseMatrix& a, double rank_tol) {
  const Svd s = a.svd();
  const Index n = s.sigma.size();
  const double smax = s.sigma(0);
  const double smin = s.sigma(n - 1);
  if (smax == 0.0 || smin <= rank_tol * smax)
    return {std::numeric_limits<double>::infinity(), true};
  return {smax / smin, false};
}

}  // namespace cpqls
