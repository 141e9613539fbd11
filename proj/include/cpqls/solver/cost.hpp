#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "cpqls/matcore/dense_matrix.hpp"
#include "cpqls/precond/circulant.hpp"

namespace cpqls {

// Complexity formulas with every polylog factor evaluated as 1. These are
// reporting aids only.
double cost_hhl(double s, double kappa, double eps);                 // s kappa^2 / eps
double cost_ambainis(double s, double kappa, double eps);            // s kappa / eps^3
double cost_cks(double s, double kappa);                             // s kappa
double cost_wzp(double kappa, double frob_A, double eps);            // kappa^2 ||A||_F / eps
double cost_cjs(double s, double kappa_MA, double eps);              // s^7 kappa(MA) / eps
// kappa(C)^{5/2} kappa(C^{-1}A)^2 ||A||_F^2 eps^{-3/2}
double cost_circulant_preconditioned(double kappa_C, double kappa_CA, double frob_A, double eps);
// kappa(C)^2 kappa(C^{-1}A)^2 ||A||_F ||C^{-1}A||_F / eps^2 (dominant first term)
double cost_circulant_preconditioned_small_kappa(double kappa_C, double kappa_CA, double frob_A, double frob_CA, double eps);
// kappa(M)^{5/2} kappa(M^{-1}A)^4 ||A||_F ||M||_F ||M^{-1}A||_F eps^{-9/2}
double cost_general_preconditioned(double kappa_M, double kappa_MA, double frob_A, double frob_M, double frob_MA, double eps);

// Largest count of nonzeros in any row or column.
Index sparsity(const DenseMatrix& a);

struct CostInputs {
  Index n = 0;
  double sparsity = 0.0;
  double kappa_A = 0.0;
  double kappa_P = 0.0;   // preconditioner
  double kappa_PA = 0.0;  // preconditioned matrix
  double frob_A = 0.0;
  double frob_P = 0.0;
  double frob_PA = 0.0;
  double eps = 0.0;
};

struct CostReport {
  CostInputs inputs;
  std::map<std::string, double> formula_values;
  std::map<std::string, double> measured_repetitions;  // stage -> expected retries 1/p
};

// Condition numbers come from dense SVDs of A, C and C^{-1}A. The CJS row
// uses the circulant in place of the sparse approximate inverse M.
CostReport cost_report(const DenseMatrix& a, const CirculantSpec& c, double eps);
CostReport cost_report_general(const DenseMatrix& a, const DenseMatrix& m, double eps);

nlohmann::json cost_to_json(const CostReport& r);

}  // namespace cpqls
