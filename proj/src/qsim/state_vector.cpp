#include "cpqls/qsim/state_vector.hpp"

#include <algorithm>
#include <numeric>

#include "cpqls/matcore/error.hpp"
#include "cpqls/matcore/io.hpp"

namespace cpqls {

StateVector::StateVector(std::vector<Index> dims, std::vector<std::string> labels, CVector amps)
    : dims_(std::move(dims)), labels_(std::move(labels)), amps_(std::move(amps)) {
  if (dims_.empty()) throw Error(ErrorKind::dimension, "state: no registers");
  if (labels_.size() != dims_.size()) throw Error(ErrorKind::dimension, "state: one label per register required");
  Index total = 1;
  for (Index d : dims_) {
    if (d <= 0) throw Error(ErrorKind::dimension, "state: register size must be positive");
    total *= d;
  }
  if (total != amps_.size()) throw Error(ErrorKind::dimension, "state: amplitude count does not match registers");
  if (!all_finite(amps_)) throw Error(ErrorKind::non_finite, "state: non-finite amplitude");
  norm_ = amps_.norm();
  normalized_ = std::abs(norm_ - 1.0) <= 1e-10;
}

StateVector StateVector::basis(std::vector<Index> dims, std::vector<std::string> labels,
                               const std::vector<Index>& digits) {
  Index total = 1;
  for (Index d : dims) total *= d;
  StateVector s(std::move(dims), std::move(labels), CVector::Zero(total));
  s.amps_(s.flat_index(digits)) = 1.0;
  s.norm_ = 1.0;
  s.normalized_ = true;
  return s;
}

StateVector StateVector::single(CVector amps, std::string label) {
  const Index n = amps.size();
  return StateVector({n}, {std::move(label)}, std::move(amps));
}

Index StateVector::register_index(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorKind::domain, "state: no register '" + label + "'");
  return it - labels_.begin();
}

StateVector StateVector::normalized() const {
  if (norm_ == 0.0) throw Error(ErrorKind::empty_postselection, "state: cannot normalize a zero vector");
  return StateVector(dims_, labels_, amps_ / norm_);
}

Index StateVector::flat_index(const std::vector<Index>& digits) const {
  if (digits.size() != dims_.size()) throw Error(ErrorKind::dimension, "state: wrong number of digits");
  Index flat = 0;
  for (std::size_t r = 0; r < dims_.size(); ++r) {
    if (digits[r] < 0 || digits[r] >= dims_[r]) throw Error(ErrorKind::index_out_of_range, "state: digit out of range");
    flat = flat * dims_[r] + digits[r];
  }
  return flat;
}

std::vector<Index> StateVector::digits(Index flat) const {
  std::vector<Index> out(dims_.size());
  for (std::size_t r = dims_.size(); r-- > 0;) {
    out[r] = flat % dims_[r];
    flat /= dims_[r];
  }
  return out;
}

namespace {

// Flat index = (outer * d + value) * inner + rest.
struct Split {
  Index outer = 1, d = 1, inner = 1;
};

Split split_at(const std::vector<Index>& dims, std::size_t reg) {
  Split s;
  for (std::size_t r = 0; r < reg; ++r) s.outer *= dims[r];
  s.d = dims[reg];
  for (std::size_t r = reg + 1; r < dims.size(); ++r) s.inner *= dims[r];
  return s;
}

}  // namespace

std::vector<double> StateVector::marginal(std::size_t reg) const {
  if (reg >= dims_.size()) throw Error(ErrorKind::index_out_of_range, "state: register index out of range");
  const Split s = split_at(dims_, reg);
  std::vector<double> p(static_cast<std::size_t>(s.d), 0.0);
  for (Index o = 0; o < s.outer; ++o)
    for (Index v = 0; v < s.d; ++v)
      for (Index i = 0; i < s.inner; ++i) p[v] += std::norm(amps_((o * s.d + v) * s.inner + i));
  const double total = norm_ * norm_;
  if (total > 0.0)
    for (double& x : p) x /= total;
  return p;
}

StateVector StateVector::project(std::size_t reg, Index value) const {
  if (reg >= dims_.size()) throw Error(ErrorKind::index_out_of_range, "state: register index out of range");
  if (dims_.size() == 1) throw Error(ErrorKind::domain, "state: cannot project away the only register");
  const Split s = split_at(dims_, reg);
  if (value < 0 || value >= s.d) throw Error(ErrorKind::index_out_of_range, "state: projection value out of range");
  CVector out(s.outer * s.inner);
  for (Index o = 0; o < s.outer; ++o)
    for (Index i = 0; i < s.inner; ++i) out(o * s.inner + i) = amps_((o * s.d + value) * s.inner + i);
  auto dims = dims_;
  auto labels = labels_;
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(reg));
  labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(reg));
  return StateVector(std::move(dims), std::move(labels), std::move(out));
}

StateVector StateVector::tensor(const StateVector& other) const {
  CVector out(size() * other.size());
  for (Index a = 0; a < size(); ++a) out.segment(a * other.size(), other.size()) = amps_(a) * other.amps_;
  auto dims = dims_;
  auto labels = labels_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  return StateVector(std::move(dims), std::move(labels), std::move(out));
}

nlohmann::json StateVector::to_json() const {
  nlohmann::json amps = nlohmann::json::array();
  for (Index i = 0; i < size(); ++i) amps.push_back(io::complex_to_json(amps_(i)));
  return {{"dims", dims_}, {"labels", labels_}, {"amps", amps}};
}

StateVector StateVector::from_json(const nlohmann::json& j) {
  try {
    const auto dims = j.at("dims").get<std::vector<Index>>();
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto& amps = j.at("amps");
    CVector v(static_cast<Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Index>(i)) = io::complex_from_json(amps[i]);
    return StateVector(dims, labels, std::move(v));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("state json: ") + e.what());
  }
}

Index sample_outcome(const std::vector<double>& probs, Rng& rng) {
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorKind::empty_postselection, "sampling from an empty distribution");
  std::uniform_real_distribution<double> u(0.0, total);
  const double r = u(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (r < acc) return static_cast<Index>(i);
  }
  // Rounding at the top end: last outcome with positive weight.
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0.0) return static_cast<Index>(i);
  return 0;
}

std::vector<Index> sample_register(const StateVector& s, std::size_t reg, Index shots, Rng& rng) {
  const auto p = s.marginal(reg);
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(shots));
  for (Index k = 0; k < shots; ++k) out.push_back(sample_outcome(p, rng));
  return out;
}

double fidelity(const CVector& a, const CVector& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double overlap = std::abs(a.dot(b)) / (na * nb);
  return overlap * overlap;
}

}  // namespace cpqls
