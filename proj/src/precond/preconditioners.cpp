#include "cpqls/precond/preconditioners.hpp"

#include "cpqls/matcore/error.hpp"

namespace cpqls {

CirculantSpec strang(const ToeplitzSpec& t, EvenStrangRule rule) {
  const Index n = t.n();
  const Index m = n / 2;
  const bool odd = n % 2 == 1;
  CVector s(n);
  for (Index k = 0; k < n; ++k) {
    if (k < m || (odd && k == m)) s(k) = t.t(k);
    else if (k == m) s(k) = rule == EvenStrangRule::upper ? t.t(m) : 0.5 * (t.t(m) + t.t(-m));
    else s(k) = t.t(k - n);
  }
  return CirculantSpec::from_first_column(std::move(s));
}

CirculantSpec chan_optimal(const DenseMatrix& a) {
  const Index n = a.n();
  CVector c = CVector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    for (Index p = 0; p < n; ++p) c(j) += a(p, ((p - j) % n + n) % n);
    c(j) /= static_cast<double>(n);
  }
  return CirculantSpec::from_first_column(std::move(c));
}

CirculantSpec chan_optimal_toeplitz(const ToeplitzSpec& t) {
  const Index n = t.n();
  CVector c(n);
  for (Index k = 0; k < n; ++k)
    c(k) = (static_cast<double>(n - k) * t.t(k) + static_cast<double>(k) * (k == 0 ? cplx(0.0) : t.t(k - n))) /
           static_cast<double>(n);
  return CirculantSpec::from_first_column(std::move(c));
}

CirculantSpec super_optimal(const DenseMatrix& a, double rel_tol) {
  const CirculantSpec num = chan_optimal(DenseMatrix(a.entries() * a.entries().adjoint()));
  const CirculantSpec den = chan_optimal(a.adjoint());
  if (auto k = den.singular_index(rel_tol))
    throw Error(ErrorKind::super_optimal_undefined,
                "super-optimal preconditioner undefined: eigenvalue " + std::to_string(*k) +
                    " of the optimal circulant of A^dagger vanishes");
  return CirculantSpec::from_eigenvalues(num.eigvals().cwiseQuotient(den.eigvals()));
}

PreconditionerKind parse_preconditioner_kind(const std::string& name) {
  if (name == "strang") return PreconditionerKind::strang;
  if (name == "optimal") return PreconditionerKind::optimal;
  if (name == "superoptimal") return PreconditionerKind::superoptimal;
  if (name == "identity") return PreconditionerKind::identity;
  throw Error(ErrorKind::domain, "unknown preconditioner '" + name + "'");
}

std::string to_string(PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::strang: return "strang";
    case PreconditionerKind::optimal: return "optimal";
    case PreconditionerKind::superoptimal: return "superoptimal";
    case PreconditionerKind::identity: return "identity";
  }
  return "unknown";
}

CirculantSpec build_preconditioner(PreconditionerKind kind, const DenseMatrix& a, EvenStrangRule rule) {
  switch (kind) {
    case PreconditionerKind::strang:
      try {
        return strang(ToeplitzSpec::from_matrix(a), rule);
      } catch (const Error& e) {
        throw Error(ErrorKind::domain, std::string("strang preconditioner needs a Toeplitz matrix: ") + e.what());
      }
    case PreconditionerKind::optimal: return chan_optimal(a);
    case PreconditionerKind::superoptimal: return super_optimal(a);
    case PreconditionerKind::identity: return CirculantSpec::identity(a.n());
  }
  throw Error(ErrorKind::domain, "unknown preconditioner");
}

}  // namespace cpqls
