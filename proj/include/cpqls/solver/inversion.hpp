#pragma once

#include <optional>
#include <vector>

#include "cpqls/qsim/sve.hpp"

namespace cpqls {

// |<a|b>| / (|a| |b|): the solver's fidelity measure.
double overlap_fidelity(const CVector& a, const CVector& b);

struct InversionResult {
  StateVector state = StateVector::single(CVector::Ones(1), "col");  // normalized, on the column register
  CVector postselected;        // clean post-selected vector before normalization
  double success_prob = 0.0;   // ancilla |0> probability before any measurement
  double Z = 0.0;
  double Z_max = 0.0;          // default_rotation_scale
  double sigma_cutoff = 0.0;   // ||A||_F 2^-t
  double norm_estimate = 0.0;  // sqrt(success_prob) / Z, estimates ||A^{-1} b||
  double uncompute_weight = 0.0;  // |postselected|^2 / success_prob
  double excluded_weight = 0.0;   // outcome probability below the cutoff
  double clipped_weight = 0.0;    // outcomes below Z whose rotation was clipped at 1
  CVector classical;              // normalized A^{-1} b from a dense LU solve
  double fidelity_vs_classical = 0.0;
};

// Outcome distribution of phase estimation on N applied to the maximally
// mixed column state: each singular value contributes weight 1/n.
std::vector<double> operator_distribution(const SpectralQpe& qpe);

// Smallest sigma~ >= cutoff among outcomes whose operator_distribution
// weight is at least branch_floor / n. +inf when there is none.
double default_rotation_scale(const SpectralQpe& qpe, double branch_floor);

// Loads b with U_N, runs phase estimation on W, rotates an ancilla by
// r(y) = min(1, Z / sigma~(y)) on outcomes with sigma~ >= cutoff (0 below),
// applies the reverse-direction phase e^{-i pi phi}, undoes phase
// estimation, and keeps the clean branch with ancilla |0>, unloading with
// U_M^{-1}. Z defaults to default_rotation_scale, a property of A alone, so
// every input sees the same rotation. Throws ErrorKind::singular when b has
// no outcome of probability >= cfg.branch_floor above the cutoff, and
// ErrorKind::invalid_rotation when an explicit Z exceeds the default.
InversionResult invert_via_sve(const SpectralQpe& qpe, const CVector& b, const SVEConfig& cfg,
                               std::optional<double> z = std::nullopt);
InversionResult invert_via_sve(const DenseMatrix& a, const CVector& b, const SVEConfig& cfg,
                               std::optional<double> z = std::nullopt);

}  // namespace cpqls
