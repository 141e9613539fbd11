#pragma once

#include <cstdint>
#include <utility>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpqls/qsim/state_vector.hpp"
#include "cpqls/qsim/walk.hpp"

namespace cpqls {

// exact_uncompute: after undoing phase estimation, keep only the component
// whose phase register and ancilla register are back at |0> (its weight is
// reported). keep_ancilla: simulate the full circuit and return every
// register, garbage included.
enum class GarbagePolicy { exact_uncompute, keep_ancilla };

GarbagePolicy parse_garbage_policy(const std::string& name);
std::string to_string(GarbagePolicy p);

struct SVEConfig {
  int phase_bits = 8;
  Index shots = 0;  // value-register draws; 0 means exact distributions only
  std::uint64_t seed = 0;
  GarbagePolicy garbage_policy = GarbagePolicy::exact_uncompute;
  int phase_bits_cap = 12;
  int log2_amplitude_cap = 26;  // n^2 2^t (and n^2 4^t for keep_ancilla)
  double branch_floor = 1e-3;   // outcome probability below which inversion ignores a branch
};

// Throws ErrorKind::cap_exceeded or ErrorKind::domain.
void validate_config(const SVEConfig& cfg, Index n);

// Phase estimation on W expressed in its eigenbasis. With a = Q^dagger psi,
// outcome y has probability sum_k |a_k|^2 |c_k(y)|^2. Running phase
// estimation, a diagonal r(y) on the phase register, and the inverse phase
// estimation leaves sum_k a_k q_k sum_y |c_k(y)|^2 r(y) on the clean
// (phase = 0) branch. The walk operator must outlive this object.
class SpectralQpe {
 public:
  SpectralQpe(const WalkOperator& w, int phase_bits);

  const WalkOperator& walk() const { return *w_; }
  Index outcomes() const { return T_; }
  int phase_bits() const { return t_; }

  CVector coefficients(const CVector& psi) const { return w_->eigvecs().adjoint() * psi; }
  double weight(Index k, Index y) const { return weights_(k, y); }

  std::vector<double> outcome_distribution(const CVector& a) const;
  // r given sparsely as (y, r(y)) pairs; outcomes not listed get r = 0.
  CVector clean_branch(const CVector& a, const std::vector<std::pair<Index, cplx>>& r) const;

 private:
  const WalkOperator* w_;
  int t_;
  Index T_;
  Eigen::MatrixXd weights_;  // dim x T
};

enum class SveDirection { forward, reverse };

struct SveBranch {
  Index value_index = 0;     // m = |signed outcome|, 0..T/2
  double sigma_tilde = 0.0;  // ||A||_F cos(pi m / T)
  double probability = 0.0;  // value-register marginal before uncomputation
  double clean_weight = 0.0; // squared norm of the clean output component
  bool singular = false;     // sigma_tilde below the cutoff
  CVector output;            // clean output-register component (unnormalized)
};

struct SveResult {
  SveDirection direction = SveDirection::forward;
  Index n = 0;
  int phase_bits = 0;
  Index outcomes = 0;
  double frobenius = 0.0;
  double singular_cutoff = 0.0;  // ||A||_F 2^-t
  GarbagePolicy policy = GarbagePolicy::exact_uncompute;
  std::vector<SveBranch> branches;  // indexed by m
  // (out, value) with out = "row" (forward) or "col" (reverse); unnormalized,
  // norm^2 = clean_weight.
  StateVector state = StateVector::single(CVector::Zero(1), "out");
  double clean_weight = 0.0;
  std::optional<StateVector> full_state;  // keep_ancilla: (row, col, phase, value)
  std::vector<Index> samples;             // value-register draws
  std::optional<double> median_sigma_tilde;
};

// Forward: sum a_i |v_i> -> sum a_i |u_i>|sigma~_i>. The input lives on the
// column register, is loaded with U_M, rotated by e^{+i pi phi} on phase
// outcome phi in [-1/2, 1/2), and unloaded with U_N^{-1}.
SveResult sve_forward(const WalkOperator& w, const CVector& input, const SVEConfig& cfg);
// Reverse: sum a_i |u_i> -> sum a_i |v_i>|sigma~_i>, loading with U_N,
// rotating by e^{-i pi phi}, unloading with U_M^{-1}.
SveResult sve_reverse(const WalkOperator& w, const CVector& input, const SVEConfig& cfg);

// Register-level simulation of the whole chain: dims (row, col, phase, value)
// = (n, n, T, T). Used for the keep_ancilla policy.
StateVector sve_circuit(const WalkOperator& w, const CVector& input, int phase_bits, SveDirection dir);

double sigma_tilde(double frobenius, Index m, Index T);

nlohmann::json sve_to_json(const SveResult& r);
// outcome,probability,sigma_tilde over value-register outcomes.
std::string sve_distribution_csv(const SveResult& r);

}  // namespace cpqls
