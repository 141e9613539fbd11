#include "cpqls/qsim/sve.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cpqls/matcore/error.hpp"
#include "cpqls/matcore/io.hpp"
#include "cpqls/qsim/phase_estimation.hpp"

namespace cpqls {

GarbagePolicy parse_garbage_policy(const std::string& name) {
  if (name == "exact-uncompute") return GarbagePolicy::exact_uncompute;
  if (name == "keep-ancilla") return GarbagePolicy::keep_ancilla;
  throw Error(ErrorKind::domain, "unknown garbage policy '" + name + "'");
}

std::string to_string(GarbagePolicy p) {
  return p == GarbagePolicy::exact_uncompute ? "exact-uncompute" : "keep-ancilla";
}

void validate_config(const SVEConfig& cfg, Index n) {
  if (cfg.phase_bits < 1) throw Error(ErrorKind::domain, "phase_bits must be at least 1");
  if (cfg.phase_bits > cfg.phase_bits_cap)
    throw Error(ErrorKind::cap_exceeded, "phase_bits " + std::to_string(cfg.phase_bits) + " exceeds the cap " +
                                             std::to_string(cfg.phase_bits_cap));
  if (cfg.shots < 0) throw Error(ErrorKind::domain, "shots must be nonnegative");
  if (!(cfg.branch_floor >= 0.0 && cfg.branch_floor < 1.0))
    throw Error(ErrorKind::domain, "branch_floor must lie in [0, 1)");
  const double log2_amps = 2.0 * std::log2(static_cast<double>(n)) + cfg.phase_bits;
  if (log2_amps > cfg.log2_amplitude_cap + 1e-9)
    throw Error(ErrorKind::cap_exceeded, "n^2 2^t exceeds 2^" + std::to_string(cfg.log2_amplitude_cap) + " amplitudes");
  if (cfg.garbage_policy == GarbagePolicy::keep_ancilla && log2_amps + cfg.phase_bits > cfg.log2_amplitude_cap + 1e-9)
    throw Error(ErrorKind::cap_exceeded,
                "keep-ancilla state n^2 4^t exceeds 2^" + std::to_string(cfg.log2_amplitude_cap) + " amplitudes");
}

SpectralQpe::SpectralQpe(const WalkOperator& w, int phase_bits)
    : w_(&w), t_(phase_bits), T_(Index{1} << phase_bits), weights_(w.dim(), Index{1} << phase_bits) {
  const RVector& phi = w.eigphases();
  for (Index k = 0; k < w.dim(); ++k)
    for (Index y = 0; y < T_; ++y) weights_(k, y) = qpe_probability(phi(k), y, T_);
}

std::vector<double> SpectralQpe::outcome_distribution(const CVector& a) const {
  const Eigen::VectorXd p = weights_.transpose() * a.cwiseAbs2();
  return std::vector<double>(p.data(), p.data() + p.size());
}

CVector SpectralQpe::clean_branch(const CVector& a, const std::vector<std::pair<Index, cplx>>& r) const {
  CVector f = CVector::Zero(a.size());
  for (const auto& [y, ry] : r) f += weights_.col(y).cast<cplx>() * ry;
  return w_->eigvecs() * a.cwiseProduct(f);
}

double sigma_tilde(double frobenius, Index m, Index T) {
  if (2 * m == T) return 0.0;
  return frobenius * std::cos(kPi * static_cast<double>(m) / static_cast<double>(T));
}

namespace {

// Outcomes y with |signed y| = m.
std::vector<Index> outcomes_for_value(Index m, Index T) {
  if (m == 0 || 2 * m == T) return {m};
  return {m, T - m};
}

cplx rotation(Index y, Index T, SveDirection dir) {
  const double sign = dir == SveDirection::forward ? 1.0 : -1.0;
  return std::polar(1.0, sign * kPi * signed_phase(y, T));
}

CVector check_input(const WalkOperator& w, const CVector& input) {
  if (input.size() != w.n()) throw Error(ErrorKind::dimension, "sve: input length must equal n");
  if (!all_finite(input)) throw Error(ErrorKind::non_finite, "sve: non-finite input");
  if (std::abs(input.norm() - 1.0) > 1e-10) throw Error(ErrorKind::domain, "sve: input must have unit norm");
  return input;
}

CVector load(const WalkOperator& w, const CVector& x, SveDirection dir) {
  return dir == SveDirection::forward ? CVector(w.M() * x) : CVector(w.N() * x);
}

CVector unload(const WalkOperator& w, const CVector& g, SveDirection dir) {
  return dir == SveDirection::forward ? CVector(w.N().adjoint() * g) : CVector(w.M().adjoint() * g);
}

SveResult run_sve(const WalkOperator& w, const CVector& input, const SVEConfig& cfg, SveDirection dir) {
  validate_config(cfg, w.n());
  const CVector x = check_input(w, input);
  const Index n = w.n();

  SveResult r;
  r.direction = dir;
  r.n = n;
  r.phase_bits = cfg.phase_bits;
  r.outcomes = Index{1} << cfg.phase_bits;
  r.frobenius = w.frobenius();
  r.singular_cutoff = r.frobenius * std::ldexp(1.0, -cfg.phase_bits);
  r.policy = cfg.garbage_policy;
  const Index T = r.outcomes;

  const SpectralQpe qpe(w, cfg.phase_bits);
  const CVector a = qpe.coefficients(load(w, x, dir));
  const std::vector<double> p = qpe.outcome_distribution(a);

  if (cfg.garbage_policy == GarbagePolicy::keep_ancilla) r.full_state = sve_circuit(w, x, cfg.phase_bits, dir);

  CVector amps = CVector::Zero(n * T);
  for (Index m = 0; 2 * m <= T; ++m) {
    SveBranch b;
    b.value_index = m;
    b.sigma_tilde = sigma_tilde(r.frobenius, m, T);
    b.singular = b.sigma_tilde < r.singular_cutoff;
    std::vector<std::pair<Index, cplx>> terms;
    for (Index y : outcomes_for_value(m, T)) {
      b.probability += p[y];
      terms.emplace_back(y, rotation(y, T, dir));
    }
    if (r.full_state) {
      b.output = CVector(n);
      for (Index k = 0; k < n; ++k)
        b.output(k) = dir == SveDirection::forward ? r.full_state->amplitude({k, 0, 0, m})
                                                   : r.full_state->amplitude({0, k, 0, m});
    } else {
      b.output = unload(w, qpe.clean_branch(a, terms), dir);
    }
    b.clean_weight = b.output.squaredNorm();
    r.clean_weight += b.clean_weight;
    for (Index k = 0; k < n; ++k) amps(k * T + m) = b.output(k);
    r.branches.push_back(std::move(b));
  }
  r.state = StateVector({n, T}, {dir == SveDirection::forward ? "row" : "col", "value"}, std::move(amps));

  if (cfg.shots > 0) {
    std::vector<double> pm(static_cast<std::size_t>(T), 0.0);
    for (const auto& b : r.branches) pm[b.value_index] = b.probability;
    Rng rng(cfg.seed);
    for (Index s = 0; s < cfg.shots; ++s) r.samples.push_back(sample_outcome(pm, rng));
    std::vector<Index> sorted = r.samples;
    std::nth_element(sorted.begin(), sorted.begin() + (cfg.shots - 1) / 2, sorted.end());
    r.median_sigma_tilde = sigma_tilde(r.frobenius, sorted[static_cast<std::size_t>((cfg.shots - 1) / 2)], T);
  }
  return r;
}

}  // namespace

SveResult sve_forward(const WalkOperator& w, const CVector& input, const SVEConfig& cfg) {
  return run_sve(w, input, cfg, SveDirection::forward);
}

SveResult sve_reverse(const WalkOperator& w, const CVector& input, const SVEConfig& cfg) {
  return run_sve(w, input, cfg, SveDirection::reverse);
}

StateVector sve_circuit(const WalkOperator& w, const CVector& input, int phase_bits, SveDirection dir) {
  const Index n = w.n(), d = w.dim();
  const Index T = Index{1} << phase_bits;
  const CMatrix um = w.prep_unitary_M(), un = w.prep_unitary_N();

  // |0>_row |x>_col for forward, |x>_row |0>_col for reverse.
  CVector start = CVector::Zero(d);
  for (Index k = 0; k < n; ++k) start(dir == SveDirection::forward ? k : k * n) = input(k);
  const CVector loaded = (dir == SveDirection::forward ? um : un) * start;
  const StateVector after_qpe = phase_estimation(w.W(), StateVector({n, n}, {"row", "col"}, loaded), phase_bits);

  const auto inverse_powers = inverse_powers_of_two(w.W(), phase_bits);
  const CMatrix unload = (dir == SveDirection::forward ? un : um).adjoint();
  CVector full = CVector::Zero(d * T * T);
  for (Index m = 0; 2 * m <= T; ++m) {
    CMatrix slices = CMatrix::Zero(d, T);
    for (Index y : outcomes_for_value(m, T))
      for (Index s = 0; s < d; ++s) slices(s, y) = after_qpe.amps()(s * T + y) * rotation(y, T, dir);
    const CMatrix undone = unload * inverse_phase_estimation(inverse_powers, slices);
    for (Index s = 0; s < d; ++s)
      for (Index z = 0; z < T; ++z) full((s * T + z) * T + m) = undone(s, z);
  }
  return StateVector({n, n, T, T}, {"row", "col", "phase", "value"}, std::move(full));
}

nlohmann::json sve_to_json(const SveResult& r) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& b : r.branches) {
    if (b.probability < 1e-12 && b.clean_weight < 1e-12) continue;
    branches.push_back({{"value_index", b.value_index},
                        {"sigma_tilde", b.sigma_tilde},
                        {"probability", b.probability},
                        {"clean_weight", b.clean_weight},
                        {"singular", b.singular},
                        {"output", io::vector_to_json(b.output)["values"]}});
  }
  nlohmann::json j = {{"direction", r.direction == SveDirection::forward ? "forward" : "reverse"},
                      {"n", r.n},
                      {"phase_bits", r.phase_bits},
                      {"frobenius", r.frobenius},
                      {"singular_cutoff", r.singular_cutoff},
                      {"garbage_policy", to_string(r.policy)},
                      {"clean_weight", r.clean_weight},
                      {"branches", branches}};
  if (!r.samples.empty()) {
    j["shots"] = r.samples.size();
    j["median_sigma_tilde"] = *r.median_sigma_tilde;
  }
  return j;
}

std::string sve_distribution_csv(const SveResult& r) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "outcome,probability,sigma_tilde\n";
  for (const auto& b : r.branches) out << b.value_index << ',' << b.probability << ',' << b.sigma_tilde << '\n';
  return out.str();
}

}  // namespace cpqls
