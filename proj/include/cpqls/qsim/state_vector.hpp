#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cpqls/matcore/generators.hpp"
#include "cpqls/matcore/types.hpp"

namespace cpqls {

// Amplitudes over an ordered list of registers; the first register is the
// most significant digit of the flat index. Unit norm is checked to 1e-10
// and recorded; unnormalized intermediates keep their norm.
class StateVector {
 public:
  StateVector(std::vector<Index> dims, std::vector<std::string> labels, CVector amps);

  static StateVector basis(std::vector<Index> dims, std::vector<std::string> labels,
                           const std::vector<Index>& digits);
  // Single register; the vector is stored as given.
  static StateVector single(CVector amps, std::string label);

  const std::vector<Index>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const CVector& amps() const { return amps_; }
  Index size() const { return amps_.size(); }
  std::size_t num_registers() const { return dims_.size(); }
  Index register_index(const std::string& label) const;

  double norm() const { return norm_; }
  bool is_normalized() const { return normalized_; }
  StateVector normalized() const;

  Index flat_index(const std::vector<Index>& digits) const;
  std::vector<Index> digits(Index flat) const;
  cplx amplitude(const std::vector<Index>& digits) const { return amps_(flat_index(digits)); }

  // Outcome probabilities of one register, normalized by the squared norm.
  std::vector<double> marginal(std::size_t reg) const;
  // Branch where register reg holds value; the register is removed and the
  // result is left unnormalized.
  StateVector project(std::size_t reg, Index value) const;
  StateVector tensor(const StateVector& other) const;

  nlohmann::json to_json() const;
  static StateVector from_json(const nlohmann::json& j);

 private:
  std::vector<Index> dims_;
  std::vector<std::string> labels_;
  CVector amps_;
  double norm_ = 0.0;
  bool normalized_ = false;
};

// Seeded draws from a discrete distribution (need not be normalized).
Index sample_outcome(const std::vector<double>& probs, Rng& rng);
std::vector<Index> sample_register(const StateVector& s, std::size_t reg, Index shots, Rng& rng);

// Fidelity |<a|b>|^2 / (|a|^2 |b|^2); zero if either vector vanishes.
double fidelity(const CVector& a, const CVector& b);

}  // namespace cpqls
