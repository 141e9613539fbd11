#include "cpqls/solver/cost.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "cpqls/matcore/error.hpp"
#include "cpqls/matcore/svd.hpp"

namespace cpqls {

double cost_hhl(double s, double kappa, double eps) { return s * kappa * kappa / eps; }
double cost_ambainis(double s, double kappa, double eps) { return s * kappa / (eps * eps * eps); }
double cost_cks(double s, double kappa) { return s * kappa; }
double cost_wzp(double kappa, double frob_A, double eps) { return kappa * kappa * frob_A / eps; }
double cost_cjs(double s, double kappa_MA, double eps) { return std::pow(s, 7.0) * kappa_MA / eps; }

double cost_circulant_preconditioned(double kappa_C, double kappa_CA, double frob_A, double eps) {
  return std::pow(kappa_C, 2.5) * kappa_CA * kappa_CA * frob_A * frob_A * std::pow(eps, -1.5);
}

double cost_circulant_preconditioned_small_kappa(double kappa_C, double kappa_CA, double frob_A, double frob_CA, double eps) {
  return kappa_C * kappa_C * kappa_CA * kappa_CA * frob_A * frob_CA / (eps * eps);
}

double cost_general_preconditioned(double kappa_M, double kappa_MA, double frob_A, double frob_M, double frob_MA, double eps) {
  return std::pow(kappa_M, 2.5) * std::pow(kappa_MA, 4.0) * frob_A * frob_M * frob_MA * std::pow(eps, -4.5);
}

Index sparsity(const DenseMatrix& a) {
  const Index n = a.n();
  Index s = 0;
  for (Index i = 0; i < n; ++i) {
    Index row = 0, col = 0;
    for (Index j = 0; j < n; ++j) {
      if (a(i, j) != cplx(0.0)) ++row;
      if (a(j, i) != cplx(0.0)) ++col;
    }
    s = std::max({s, row, col});
  }
  return s;
}

namespace {

CostReport fill(const DenseMatrix& a, const DenseMatrix& p, const DenseMatrix& pa, double eps, bool general) {
  if (!(eps > 0.0)) throw Error(ErrorKind::domain, "cost_report: eps must be positive");
  CostReport r;
  CostInputs& in = r.inputs;
  in.n = a.n();
  in.sparsity = static_cast<double>(sparsity(a));
  in.kappa_A = condition_number(a).value;
  in.kappa_P = condition_number(p).value;
  in.kappa_PA = condition_number(pa).value;
  in.frob_A = a.frobenius();
  in.frob_P = p.frobenius();
  in.frob_PA = pa.frobenius();
  in.eps = eps;

  auto& f = r.formula_values;
  f["HHL"] = cost_hhl(in.sparsity, in.kappa_A, eps);
  f["Ambainis"] = cost_ambainis(in.sparsity, in.kappa_A, eps);
  f["CKS"] = cost_cks(in.sparsity, in.kappa_A);
  f["WZP"] = cost_wzp(in.kappa_A, in.frob_A, eps);
  f["CJS"] = cost_cjs(in.sparsity, in.kappa_PA, eps);
  if (general) {
    f["general_preconditioned"] = cost_general_preconditioned(in.kappa_P, in.kappa_PA, in.frob_A, in.frob_P, in.frob_PA, eps);
  } else {
    f["circulant_preconditioned"] = cost_circulant_preconditioned(in.kappa_P, in.kappa_PA, in.frob_A, eps);
    f["circulant_preconditioned_small_kappa"] = cost_circulant_preconditioned_small_kappa(in.kappa_P, in.kappa_PA, in.frob_A, in.frob_PA, eps);
  }
  return r;
}

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

CostReport cost_report(const DenseMatrix& a, const CirculantSpec& c, double eps) {
  if (c.n() != a.n()) throw Error(ErrorKind::dimension, "cost_report: size mismatch");
  const DenseMatrix ca(circulant_inverse_times(c, a.entries()));
  return fill(a, c.materialize(), ca, eps, false);
}

CostReport cost_report_general(const DenseMatrix& a, const DenseMatrix& m, double eps) {
  if (m.n() != a.n()) throw Error(ErrorKind::dimension, "cost_report: size mismatch");
  const Eigen::FullPivLU<CMatrix> lu(m.entries());
  if (!lu.isInvertible()) throw Error(ErrorKind::singular, "cost_report: preconditioner is singular");
  const DenseMatrix ma(lu.solve(a.entries()));
  return fill(a, m, ma, eps, true);
}

nlohmann::json cost_to_json(const CostReport& r) {
  const CostInputs& in = r.inputs;
  nlohmann::json j;
  j["inputs"] = {{"n", in.n},
                 {"sparsity", in.sparsity},
                 {"kappa_A", number(in.kappa_A)},
                 {"kappa_P", number(in.kappa_P)},
                 {"kappa_PA", number(in.kappa_PA)},
                 {"frob_A", in.frob_A},
                 {"frob_P", in.frob_P},
                 {"frob_PA", in.frob_PA},
                 {"eps", in.eps}};
  nlohmann::json f = nlohmann::json::object();
  for (const auto& [k, v] : r.formula_values) f[k] = number(v);
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, v] : r.measured_repetitions) m[k] = number(v);
  j["formula_values"] = f;
  j["measured_repetitions"] = m;
  j["polylog_factors"] = 1;
  return j;
}

}  // namespace cpqls
