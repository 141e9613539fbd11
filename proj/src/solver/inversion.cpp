#include "cpqls/solver/inversion.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "cpqls/matcore/error.hpp"
#include "cpqls/qsim/phase_estimation.hpp"

namespace cpqls {

double overlap_fidelity(const CVector& a, const CVector& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::min(1.0, std::abs(a.dot(b)) / (na * nb));
}

std::vector<double> operator_distribution(const SpectralQpe& qpe) {
  const WalkOperator& w = qpe.walk();
  // Q^dagger N has orthonormal columns; its squared row norms spread the
  // maximally mixed input over the eigenvectors of W.
  const CMatrix qn = w.eigvecs().adjoint() * w.N();
  CVector a(qn.rows());
  for (Index k = 0; k < qn.rows(); ++k) a(k) = qn.row(k).norm() / std::sqrt(static_cast<double>(w.n()));
  return qpe.outcome_distribution(a);
}

double default_rotation_scale(const SpectralQpe& qpe, double branch_floor) {
  const WalkOperator& w = qpe.walk();
  const Index T = qpe.outcomes();
  const double cutoff = w.frobenius() * std::ldexp(1.0, -qpe.phase_bits());
  const std::vector<double> pbar = operator_distribution(qpe);
  double z = std::numeric_limits<double>::infinity();
  for (Index y = 0; y < T; ++y) {
    const double s = sigma_tilde(w.frobenius(), value_index(y, T), T);
    if (s >= cutoff && pbar[y] >= branch_floor / static_cast<double>(w.n())) z = std::min(z, s);
  }
  return z;
}

InversionResult invert_via_sve(const SpectralQpe& qpe, const CVector& b, const SVEConfig& cfg,
                               std::optional<double> z) {
  const WalkOperator& w = qpe.walk();
  validate_config(cfg, w.n());
  if (cfg.phase_bits != qpe.phase_bits())
    throw Error(ErrorKind::domain, "invert: config phase_bits differs from the prepared phase estimation");
  if (b.size() != w.n()) throw Error(ErrorKind::dimension, "invert: b length must equal n");
  if (!all_finite(b)) throw Error(ErrorKind::non_finite, "invert: non-finite b");
  if (std::abs(b.norm() - 1.0) > 1e-10) throw Error(ErrorKind::domain, "invert: b must have unit norm");

  const Index T = qpe.outcomes();
  const double F = w.frobenius();

  InversionResult r;
  r.sigma_cutoff = F * std::ldexp(1.0, -cfg.phase_bits);

  const CVector a = qpe.coefficients(w.N() * b);
  const std::vector<double> p = qpe.outcome_distribution(a);
  const double zmax = default_rotation_scale(qpe, cfg.branch_floor);
  std::vector<double> sig(static_cast<std::size_t>(T));
  bool reachable = false;
  for (Index y = 0; y < T; ++y) {
    sig[y] = sigma_tilde(F, value_index(y, T), T);
    if (sig[y] >= r.sigma_cutoff && p[y] >= cfg.branch_floor) reachable = true;
  }
  if (!reachable || !std::isfinite(zmax))
    throw Error(ErrorKind::singular, "numerically singular: no resolved outcome above the cutoff");
  r.Z_max = zmax;
  r.Z = z.value_or(zmax);
  if (!(r.Z > 0.0)) throw Error(ErrorKind::domain, "invert: Z must be positive");
  if (r.Z > zmax * (1.0 + 1e-12))
    throw Error(ErrorKind::invalid_rotation, "invalid rotation: Z exceeds the smallest kept sigma~");

  std::vector<std::pair<Index, cplx>> terms;
  for (Index y = 0; y < T; ++y) {
    if (sig[y] < r.sigma_cutoff) {
      r.excluded_weight += p[y];
      continue;
    }
    double ry = r.Z / sig[y];
    if (ry > 1.0) {
      ry = 1.0;
      r.clipped_weight += p[y];
    }
    r.success_prob += p[y] * ry * ry;
    terms.emplace_back(y, std::polar(ry, -kPi * signed_phase(y, T)));
  }

  r.postselected = w.M().adjoint() * qpe.clean_branch(a, terms);
  const double clean = r.postselected.squaredNorm();
  if (clean == 0.0) throw Error(ErrorKind::empty_postselection, "invert: post-selected branch is empty");
  r.uncompute_weight = r.success_prob > 0.0 ? clean / r.success_prob : 0.0;
  r.norm_estimate = std::sqrt(clean) / r.Z;
  r.state = StateVector::single(r.postselected / std::sqrt(clean), "col");

  const Eigen::PartialPivLU<CMatrix> lu(w.a().entries());
  r.classical = lu.solve(b);
  r.classical.normalize();
  r.fidelity_vs_classical = overlap_fidelity(r.state.amps(), r.classical);
  return r;
}

InversionResult invert_via_sve(const DenseMatrix& a, const CVector& b, const SVEConfig& cfg, std::optional<double> z) {
  validate_config(cfg, a.n());
  const WalkOperator w = WalkOperator::build(a);
  const SpectralQpe qpe(w, cfg.phase_bits);
  return invert_via_sve(qpe, b, cfg, z);
}

}  // namespace cpqls
