#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpqls/precond/circulant.hpp"
#include "cpqls/qsim/sve.hpp"
#include "cpqls/solver/cost.hpp"
#include "cpqls/solver/eigenvalue_state.hpp"
#include "cpqls/solver/error_budget.hpp"
#include "cpqls/solver/inversion.hpp"

namespace cpqls {

struct ApplyResult {
  CVector state;               // normalized, approximately C^{-1} target / |C^{-1} target|
  double success_prob = 0.0;
  double norm_estimate = 0.0;  // estimate of |C^{-1} target| / |target| (unscaled C)
  double Z = 0.0;
  double fidelity = 0.0;       // overlap with apply_circulant_inverse
};

// Applies C^{-1} through the SVE of Lambda / max|lambda| in the Fourier
// basis: F target -> inversion against diag(lambda_s) -> F^dagger. The walk
// operator of diag(lambda_s) is built once and shared by every apply().
class CirculantInverter {
 public:
  CirculantInverter(const CirculantSpec& c, const SVEConfig& cfg);

  ApplyResult apply(const CVector& target) const;
  double scale() const { return scale_; }  // max |lambda|
  const CirculantSpec& spec() const { return c_; }

 private:
  CirculantSpec c_;
  SVEConfig cfg_;
  double scale_;
  std::unique_ptr<WalkOperator> walk_;
  std::unique_ptr<SpectralQpe> qpe_;
};

ApplyResult inverse_preconditioner_apply(const CirculantSpec& c, const CVector& target, const SVEConfig& cfg);

struct ErrorLedger {
  double epsilon = 0.0;   // pi 2^-t
  double kappa_P = 0.0;   // condition number of the preconditioner
  double beta = 0.0;      // ||P_s^{-1} A||_F^2 / ||A||_F^2 with P_s = P / max singular value
  bool beta_in_range = false;
  ErrorBudget nominal;    // eps-instantiated parameters
  ErrorBudget measured;   // parameters measured against the exact columns
  double bound = 0.0;
  double bound_simplified = 0.0;
  double bound_relaxed = 0.0;
  double measured_bound = 0.0;
  double realized = 0.0;  // | |phi> - |psi> |^2
  bool pass = false;      // realized <= bound
};

struct ColumnState {
  CVector state;
  double norm_estimate = 0.0;  // estimate of |P_s^{-1} |A_j>|
  double success_prob = 0.0;
  double fidelity = 0.0;
};

struct AssemblyResult {
  StateVector state = StateVector::single(CVector::Ones(1), "row");  // |P^{-1}A> on (row, col)
  CMatrix estimate;                  // sum_j |A_j| norm_j |state_j><j|, approximates P_s^{-1} A
  std::vector<ColumnState> columns;
  double scale = 1.0;                // P_s = P / scale
  ErrorLedger ledger;
};

AssemblyResult assemble_preconditioned_matrix_state(const DenseMatrix& a, const CirculantSpec& c,
                                                    const SVEConfig& cfg);

struct StageProbability {
  std::string stage;
  double probability = 0.0;
};

struct SolveReport {
  std::string pipeline;            // "circulant" or "general"
  Index n = 0;
  int phase_bits = 0;
  double eps0 = 0.0;
  double fidelity = 0.0;           // overlap of the output with A^{-1} b
  double preconditioned_fidelity = 0.0;  // overlap with the exact solution of the assembled system
  std::vector<StageProbability> success_probs;
  double total_success_prob = 0.0; // product over stages
  std::optional<EigenvalueStateResult> eigenvalue_stage;
  ErrorLedger ledger;
  CostReport cost;
  double recommended_epsilon = 0.0;
  int recommended_phase_bits = 0;
  CVector solution;                // normalized output state
  CVector classical;               // normalized A^{-1} b
};

struct SolveResult {
  StateVector solution = StateVector::single(CVector::Ones(1), "col");
  SolveReport report;
};

// Eigenvalue state -> C, |C^{-1} b>, |C^{-1} A> column by column, SVE access
// to the assembled matrix, inversion. Throws ErrorKind::singular when C is.
SolveResult preconditioned_solve(const DenseMatrix& a, const CVector& b, const SVEConfig& cfg, double eps0);

// Same chain with an arbitrary preconditioner M reached only through its
// walk operator: M^{-1}|A_j> and M^{-1}|b> by inversion, then the SVE of the
// assembled M^{-1}A.
SolveResult general_preconditioned_solve(const DenseMatrix& a, const DenseMatrix& m, const CVector& b,
                                         const SVEConfig& cfg, double eps0);

nlohmann::json ledger_to_json(const ErrorLedger& l);
nlohmann::json solve_report_to_json(const SolveReport& r, const SVEConfig& cfg);
std::string solve_csv_header();
std::string solve_csv_row(const SolveReport& r);

}  // namespace cpqls
