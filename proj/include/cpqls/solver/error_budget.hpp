#pragma once

#include "cpqls/matcore/types.hpp"

namespace cpqls {

// Inputs of the state-error estimate for
//   |phi> = Z^{-1/2} sum_j a_j u_j,  |psi> = W^{-1/2} sum_j b_j v_j
// with |a_j - b_j| <= eta0, |u_j - v_j|^2 <= eta1, |Z - W| <= eta2,
// max |v_j|^2 = eta3, 1 / min |u_j|^2 = eta4.
struct ErrorBudget {
  double eta0 = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
  double eta4 = 0.0;
  double W_norm = 1.0;
};

// 3 eta1 eta4 + 3 eta2^2 eta3 eta4 / (W (sqrt W + sqrt(W - eta2))^2)
//   + 3 n eta0^2 eta3 / W.
// Throws ErrorKind::domain when W <= eta2 (and eta2 > 0) or W <= 0.
double state_error_bound(const ErrorBudget& b, Index n);

// The same bound for |C^{-1}A> with eta0 = 0, eta1 = eps^2,
// eta2 = ||A||_F^2 eps^2, eta3 = kappa(C)^2 (scaled C), eta4 = max|lambda|^2.
double preconditioned_state_bound(double eps, double max_lambda_sq, double kappa_C, double frob_A, double frob_CA);

struct SimplifiedBounds {
  double bound = 0.0;             // with ||A||_F = 1 and ||C^{-1}A||_F^2 = beta
  double bound_simplified = 0.0;  // 3 eps^2 max + 3 eps^4 kappa^2 / (beta^2 (1 + sqrt(1 - eps^2/beta))^2)
  double bound_relaxed = 0.0;     // 3 eps^2 + 3 eps^4 kappa^2 / beta^2
};

// Throws ErrorKind::domain when eps^2 > beta.
SimplifiedBounds simplified_bounds(double eps, double kappa_C, double beta, double max_lambda_sq);

// sqrt(eps0 beta / kappa), which balances eps^4 kappa^2 = eps0^2 beta^2.
double choose_epsilon(double eps0, double beta, double kappa_C);

// Smallest t with pi 2^-t <= eps.
int phase_bits_for_epsilon(double eps);

}  // namespace cpqls
