#include "cpqls/precond/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cpqls/matcore/error.hpp"
#include "cpqls/matcore/io.hpp"
#include "cpqls/matcore/svd.hpp"

namespace cpqls {

Index SpectrumReport::outliers(double eps) const {
  Index count = 0;
  for (cplx z : eigvals_precond)
    if (std::abs(z - 1.0) > eps) ++count;
  return count;
}

SpectrumReport spectrum_report(const CirculantSpec& c, const DenseMatrix& a, const std::vector<double>& eps_list) {
  if (c.n() != a.n()) throw Error(ErrorKind::dimension, "spectrum: preconditioner and matrix sizes differ");
  const DenseMatrix pa(circulant_inverse_times(c, a.entries()));

  SpectrumReport r;
  r.n = a.n();
  r.kappa_A = condition_number(a).value;
  const ConditionNumber kp = condition_number(pa);
  r.kappa_precond = kp.value;
  r.precond_singular = kp.singular;

  Eigen::ComplexEigenSolver<CMatrix> es(pa.entries(), false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::domain, "spectrum: eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  r.eigvals_precond.assign(ev.data(), ev.data() + ev.size());
  std::sort(r.eigvals_precond.begin(), r.eigvals_precond.end(), [](cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  r.min_abs_eig = std::numeric_limits<double>::infinity();
  for (cplx z : r.eigvals_precond) r.min_abs_eig = std::min(r.min_abs_eig, std::abs(z));

  r.eps_list = eps_list;
  for (double eps : eps_list) r.outlier_counts.push_back(r.outliers(eps));
  return r;
}

namespace {

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

nlohmann::json spectrum_to_json(const SpectrumReport& r) {
  nlohmann::json eig = nlohmann::json::array();
  for (cplx z : r.eigvals_precond) eig.push_back(io::complex_to_json(z));
  nlohmann::json outliers = nlohmann::json::array();
  for (std::size_t i = 0; i < r.eps_list.size(); ++i)
    outliers.push_back({{"eps", r.eps_list[i]}, {"count", r.outlier_counts[i]}});
  return {{"n", r.n},
          {"kappa_A", finite_or_null(r.kappa_A)},
          {"kappa_precond", finite_or_null(r.kappa_precond)},
          {"precond_singular", r.precond_singular},
          {"min_abs_eig", r.min_abs_eig},
          {"outliers", outliers},
          {"eigvals_precond", eig}};
}

std::string spectrum_to_csv(const SpectrumReport& r) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "# n=" << r.n << "\n# kappa_A=" << r.kappa_A << "\n# kappa_precond=" << r.kappa_precond
      << "\n# min_abs_eig=" << r.min_abs_eig << '\n';
  for (std::size_t i = 0; i < r.eps_list.size(); ++i)
    out << "# outliers(eps=" << r.eps_list[i] << ")=" << r.outlier_counts[i] << '\n';
  out << "index,re,im,abs,dist_from_one\n";
  for (std::size_t i = 0; i < r.eigvals_precond.size(); ++i) {
    const cplx z = r.eigvals_precond[i];
    out << i << ',' << z.real() << ',' << z.imag() << ',' << std::abs(z) << ',' << std::abs(z - 1.0) << '\n';
  }
  return out.str();
}

}  // namespace cpqls
