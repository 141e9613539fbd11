#pragma once

#include <string>

#include "cpqls/matcore/toeplitz.hpp"
#include "cpqls/precond/circulant.hpp"

namespace cpqls {

// Middle coefficient for even n = 2m: s_m = t_m, or the average
// (t_m + t_{-m}) / 2.
enum class EvenStrangRule { upper, average };

// Copies the central diagonals of T into a circulant.
CirculantSpec strang(const ToeplitzSpec& t, EvenStrangRule rule = EvenStrangRule::upper);

// Frobenius-nearest circulant: c_j = (1/n) sum_{p - q = j mod n} a_pq.
CirculantSpec chan_optimal(const DenseMatrix& a);
// Closed form for Toeplitz input: c_k = ((n - k) t_k + k t_{k-n}) / n.
CirculantSpec chan_optimal_toeplitz(const ToeplitzSpec& t);

// Eigenvalues eig(c_F(A A^dagger)) ./ eig(c_F(A^dagger)). Throws
// ErrorKind::super_optimal_undefined when c_F(A^dagger) has an eigenvalue
// below rel_tol * max.
CirculantSpec super_optimal(const DenseMatrix& a, double rel_tol = kDefaultTolerances.circulant_singular);

enum class PreconditionerKind { strang, optimal, superoptimal, identity };

PreconditionerKind parse_preconditioner_kind(const std::string& name);
std::string to_string(PreconditionerKind kind);

// Strang requires Toeplitz input and throws ErrorKind::domain otherwise.
CirculantSpec build_preconditioner(PreconditionerKind kind, const DenseMatrix& a,
                                   EvenStrangRule rule = EvenStrangRule::upper);

}  // namespace cpqls
