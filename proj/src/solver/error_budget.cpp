#include "cpqls/solver/error_budget.hpp"

#include <algorithm>
#include <cmath>

#include "cpqls/matcore/error.hpp"

namespace cpqls {

double state_error_bound(const ErrorBudget& b, Index n) {
  for (double e : {b.eta0, b.eta1, b.eta2, b.eta3, b.eta4})
    if (!(e >= 0.0) || !std::isfinite(e)) throw Error(ErrorKind::domain, "error bound: eta values must be finite and nonnegative");
  const double W = b.W_norm;
  if (!(W > 0.0)) throw Error(ErrorKind::domain, "error bound: W must be positive");
  if (b.eta2 > 0.0 && W <= b.eta2) throw Error(ErrorKind::domain, "error bound: W must exceed eta2");
  const double root = std::sqrt(W) + std::sqrt(W - b.eta2);
  return 3.0 * b.eta1 * b.eta4 + 3.0 * b.eta2 * b.eta2 * b.eta3 * b.eta4 / (W * root * root) +
         3.0 * static_cast<double>(n) * b.eta0 * b.eta0 * b.eta3 / W;
}

double preconditioned_state_bound(double eps, double max_lambda_sq, double kappa_C, double frob_A, double frob_CA) {
  const double e2 = eps * eps;
  const double a2 = frob_A * frob_A, w = frob_CA * frob_CA;
  if (a2 * e2 > w) throw Error(ErrorKind::domain, "bound: ||A||_F^2 eps^2 exceeds ||C^{-1}A||_F^2");
  const double root = frob_CA + std::sqrt(w - a2 * e2);
  return 3.0 * e2 * max_lambda_sq + 3.0 * a2 * a2 * e2 * e2 * kappa_C * kappa_C / (w * root * root);
}

SimplifiedBounds simplified_bounds(double eps, double kappa_C, double beta, double max_lambda_sq) {
  if (!(beta > 0.0)) throw Error(ErrorKind::domain, "bounds: beta must be positive");
  const double e2 = eps * eps;
  if (e2 > beta) throw Error(ErrorKind::domain, "bounds: eps^2 exceeds beta");
  SimplifiedBounds s;
  s.bound = preconditioned_state_bound(eps, max_lambda_sq, kappa_C, 1.0, std::sqrt(beta));
  const double q = 1.0 + std::sqrt(1.0 - e2 / beta);
  s.bound_simplified = 3.0 * e2 * max_lambda_sq + 3.0 * e2 * e2 * kappa_C * kappa_C / (beta * beta * q * q);
  s.bound_relaxed = 3.0 * e2 + 3.0 * e2 * e2 * kappa_C * kappa_C / (beta * beta);
  return s;
}

double choose_epsilon(double eps0, double beta, double kappa_C) {
  if (!(eps0 > 0.0 && beta > 0.0 && kappa_C > 0.0))
    throw Error(ErrorKind::domain, "choose_epsilon: inputs must be positive");
  return std::sqrt(eps0 * beta / kappa_C);
}

int phase_bits_for_epsilon(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::domain, "phase_bits_for_epsilon: eps must be positive");
  return std::max(1, static_cast<int>(std::ceil(std::log2(kPi / eps) - 1e-12)));
}

}  // namespace cpqls
