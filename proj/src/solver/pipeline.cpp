#include "cpqls/solver/pipeline.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "cpqls/matcore/error.hpp"
#include "cpqls/matcore/fft.hpp"
#include "cpqls/matcore/io.hpp"
#include "cpqls/matcore/svd.hpp"

namespace cpqls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

CVector unit(const CVector& v, const char* what) {
  if (!all_finite(v)) throw Error(ErrorKind::non_finite, std::string(what) + ": non-finite entries");
  const double nv = v.norm();
  if (!(nv > 0.0)) throw Error(ErrorKind::domain, std::string(what) + ": zero vector");
  return v / nv;
}

CVector vec_row_major(const CMatrix& m) {
  const Index n = m.rows();
  CVector v(n * m.cols());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

// Ledger for |P_s^{-1} A> where P_s = P / scale has largest singular value 1.
// estimate and exact are both in the scaled convention.
ErrorLedger make_ledger(const DenseMatrix& a, const CMatrix& estimate, const std::vector<ColumnState>& cols,
                        const CMatrix& exact, double kappa_P, int phase_bits) {
  const Index n = a.n();
  ErrorLedger l;
  l.epsilon = kPi * std::ldexp(1.0, -phase_bits);
  l.kappa_P = kappa_P;
  const double frob_A = a.frobenius();
  const double frob_PA = exact.norm();
  const double W = frob_PA * frob_PA;
  l.beta = W / (frob_A * frob_A);
  l.beta_in_range = l.beta >= 1.0 - 1e-9 && l.beta <= kappa_P * kappa_P * (1.0 + 1e-9);

  const double e2 = l.epsilon * l.epsilon;
  l.nominal = {0.0, e2, frob_A * frob_A * e2, kappa_P * kappa_P, 1.0, W};
  try {
    l.bound = preconditioned_state_bound(l.epsilon, 1.0, kappa_P, frob_A, frob_PA);
  } catch (const Error&) {
    l.bound = kInf;  // eps too coarse for the bound to apply
  }
  try {
    const SimplifiedBounds s = simplified_bounds(l.epsilon, kappa_P, l.beta, 1.0);
    l.bound_simplified = s.bound_simplified;
    l.bound_relaxed = s.bound_relaxed;
  } catch (const Error&) {
    l.bound_simplified = l.bound_relaxed = kInf;
  }

  // Measured parameters with u_j = |state_j>|j>, v_j = |exact_j>|j>.
  ErrorBudget m{0.0, 0.0, 0.0, 1.0, 1.0, 0.0};
  double z = 0.0;
  for (Index j = 0; j < n; ++j) {
    const double aj = a.column_norm(j) * cols[j].norm_estimate;
    const double bj = exact.col(j).norm();
    m.eta0 = std::max(m.eta0, std::abs(aj - bj));
    m.eta1 = std::max(m.eta1, (cols[j].state - exact.col(j) / bj).squaredNorm());
    z += aj * aj;
    m.W_norm += bj * bj;
  }
  m.eta2 = std::abs(z - m.W_norm);
  l.measured = m;
  try {
    l.measured_bound = state_error_bound(m, n);
  } catch (const Error&) {
    l.measured_bound = kInf;
  }

  const CVector phi = vec_row_major(estimate) / estimate.norm();
  const CVector psi = vec_row_major(exact) / frob_PA;
  l.realized = (phi - psi).squaredNorm();
  l.pass = l.realized <= l.bound;
  return l;
}

// Column states via an arbitrary inverse map, assembled into the estimate
// of P_s^{-1} A. apply returns (state, norm of P_s^{-1} applied to the unit column).
template <class Apply>
AssemblyResult assemble_with(const DenseMatrix& a, double scale, Apply apply) {
  const Index n = a.n();
  AssemblyResult r;
  r.scale = scale;
  r.estimate = CMatrix(n, n);
  for (Index j = 0; j < n; ++j) {
    const double cn = a.column_norm(j);
    if (!(cn > 0.0)) throw Error(ErrorKind::zero_column, "column " + std::to_string(j) + " of A is zero");
    ColumnState c = apply(CVector(a.entries().col(j) / cn));
    r.estimate.col(j) = cn * c.norm_estimate * c.state;
    r.columns.push_back(std::move(c));
  }
  const double fn = r.estimate.norm();
  if (!(fn > 0.0)) throw Error(ErrorKind::empty_postselection, "assembled matrix state is zero");
  r.state = StateVector({n, n}, {"row", "col"}, vec_row_major(r.estimate) / fn);
  return r;
}

AssemblyResult assemble_circulant(const DenseMatrix& a, const CirculantInverter& inv, int phase_bits) {
  const CirculantSpec& c = inv.spec();
  const double scale = inv.scale();
  AssemblyResult r = assemble_with(a, scale, [&](const CVector& col) {
    const ApplyResult ar = inv.apply(col);
    return ColumnState{ar.state, ar.norm_estimate * scale, ar.success_prob, ar.fidelity};
  });
  const CMatrix exact = circulant_inverse_times(c, a.entries()) * scale;
  const double kappa = c.max_abs_eigval() / c.eigvals().cwiseAbs().minCoeff();
  r.ledger = make_ledger(a, r.estimate, r.columns, exact, kappa, phase_bits);
  return r;
}

void check_system(const DenseMatrix& a, const CVector& b, const SVEConfig& cfg, double eps0) {
  validate_config(cfg, a.n());
  if (b.size() != a.n()) throw Error(ErrorKind::dimension, "solve: b length must equal n");
  if (!(eps0 > 0.0)) throw Error(ErrorKind::domain, "solve: eps0 must be positive");
  if (condition_number(a).singular) throw Error(ErrorKind::singular, "solve: A is singular");
}

double weighted_column_success(const DenseMatrix& a, const std::vector<ColumnState>& cols) {
  double p = 0.0;
  const double f2 = a.frobenius() * a.frobenius();
  for (Index j = 0; j < a.n(); ++j) p += a.column_norm(j) * a.column_norm(j) / f2 * cols[j].success_prob;
  return p;
}

void finish_report(SolveReport& rep, const DenseMatrix& a, const CVector& b, const InversionResult& fin,
                   double eps0) {
  rep.solution = fin.state.amps();
  const Eigen::PartialPivLU<CMatrix> lu(a.entries());
  rep.classical = lu.solve(b);
  rep.classical.normalize();
  rep.fidelity = overlap_fidelity(rep.solution, rep.classical);
  rep.preconditioned_fidelity = fin.fidelity_vs_classical;
  rep.total_success_prob = 1.0;
  for (const auto& s : rep.success_probs) {
    rep.total_success_prob *= s.probability;
    rep.cost.measured_repetitions[s.stage] = s.probability > 0.0 ? 1.0 / s.probability : kInf;
  }
  rep.recommended_epsilon = choose_epsilon(eps0, rep.ledger.beta, rep.ledger.kappa_P);
  rep.recommended_phase_bits = phase_bits_for_epsilon(rep.recommended_epsilon);
}

}  // namespace

CirculantInverter::CirculantInverter(const CirculantSpec& c, const SVEConfig& cfg) : c_(c), cfg_(cfg) {
  validate_config(cfg, c.n());
  if (const auto k = c.singular_index())
    throw Error(ErrorKind::singular, "circulant is singular at eigenvalue " + std::to_string(*k));
  scale_ = c.max_abs_eigval();
  const CVector ls = c.eigvals() / scale_;
  walk_ = std::make_unique<WalkOperator>(WalkOperator::build(DenseMatrix::diagonal(ls)));
  qpe_ = std::make_unique<SpectralQpe>(*walk_, cfg.phase_bits);
}

ApplyResult CirculantInverter::apply(const CVector& target) const {
  if (target.size() != c_.n()) throw Error(ErrorKind::dimension, "apply: target length must equal n");
  const CVector t = unit(target, "apply");
  const InversionResult inv = invert_via_sve(*qpe_, fft(t), cfg_);
  ApplyResult r;
  r.state = ifft(inv.state.amps());
  r.state.normalize();
  r.success_prob = inv.success_prob;
  r.norm_estimate = inv.norm_estimate / scale_;
  r.Z = inv.Z;
  r.fidelity = overlap_fidelity(r.state, apply_circulant_inverse(c_, t));
  return r;
}

ApplyResult inverse_preconditioner_apply(const CirculantSpec& c, const CVector& target, const SVEConfig& cfg) {
  return CirculantInverter(c, cfg).apply(target);
}

AssemblyResult assemble_preconditioned_matrix_state(const DenseMatrix& a, const CirculantSpec& c,
                                                    const SVEConfig& cfg) {
  if (c.n() != a.n()) throw Error(ErrorKind::dimension, "assemble: size mismatch");
  const CirculantInverter inv(c, cfg);
  return assemble_circulant(a, inv, cfg.phase_bits);
}

SolveResult preconditioned_solve(const DenseMatrix& a, const CVector& b, const SVEConfig& cfg, double eps0) {
  check_system(a, b, cfg, eps0);
  const CVector bn = unit(b, "solve");

  SolveReport rep;
  rep.pipeline = "circulant";
  rep.n = a.n();
  rep.phase_bits = cfg.phase_bits;
  rep.eps0 = eps0;

  rep.eigenvalue_stage = eigenvalue_state(a);
  const CirculantSpec c = CirculantSpec::from_eigenvalues(rep.eigenvalue_stage->eigvals);
  if (const auto k = c.singular_index())
    throw Error(ErrorKind::singular, "optimal circulant preconditioner is singular at eigenvalue " + std::to_string(*k));

  const CirculantInverter inv(c, cfg);
  const ApplyResult rhs = inv.apply(bn);
  const AssemblyResult as = assemble_circulant(a, inv, cfg.phase_bits);
  const InversionResult fin = invert_via_sve(DenseMatrix(as.estimate), rhs.state, cfg);

  rep.success_probs = {{"eigenvalue_state", rep.eigenvalue_stage->success_prob},
                       {"rhs_apply", rhs.success_prob},
                       {"column_apply", weighted_column_success(a, as.columns)},
                       {"inversion", fin.success_prob}};
  rep.ledger = as.ledger;
  rep.cost = cost_report(a, c, rep.ledger.epsilon);
  finish_report(rep, a, b, fin, eps0);

  SolveResult out;
  out.solution = fin.state;
  out.report = std::move(rep);
  return out;
}

SolveResult general_preconditioned_solve(const DenseMatrix& a, const DenseMatrix& m, const CVector& b,
                                         const SVEConfig& cfg, double eps0) {
  check_system(a, b, cfg, eps0);
  if (m.n() != a.n()) throw Error(ErrorKind::dimension, "general solve: preconditioner size mismatch");
  const Svd ms = m.svd();
  const double smax = ms.sigma.maxCoeff(), smin = ms.sigma.minCoeff();
  if (!(smin > kDefaultTolerances.rank * smax)) throw Error(ErrorKind::singular, "general solve: M is singular");
  const CVector bn = unit(b, "general solve");

  SolveReport rep;
  rep.pipeline = "general";
  rep.n = a.n();
  rep.phase_bits = cfg.phase_bits;
  rep.eps0 = eps0;

  // (1) SVE access to M.
  const WalkOperator wm = WalkOperator::build(m);
  const SpectralQpe qm(wm, cfg.phase_bits);
  // (2) M^{-1}|A_j> and M^{-1}|b> through inversion against M.
  const InversionResult rhs = invert_via_sve(qm, bn, cfg);
  AssemblyResult as = assemble_with(a, smax, [&](const CVector& col) {
    const InversionResult ir = invert_via_sve(qm, col, cfg);
    return ColumnState{ir.state.amps(), ir.norm_estimate * smax, ir.success_prob, ir.fidelity_vs_classical};
  });
  // (3) + (4) SVE of the assembled M^{-1}A and inversion.
  const InversionResult fin = invert_via_sve(DenseMatrix(as.estimate), rhs.state.amps(), cfg);

  // Ledger oracle only: classical M^{-1}A.
  const Eigen::PartialPivLU<CMatrix> lu(m.entries());
  const CMatrix exact = lu.solve(a.entries()) * smax;
  rep.ledger = make_ledger(a, as.estimate, as.columns, exact, smax / smin, cfg.phase_bits);

  rep.success_probs = {{"rhs_apply", rhs.success_prob},
                       {"column_apply", weighted_column_success(a, as.columns)},
                       {"inversion", fin.success_prob}};
  rep.cost = cost_report_general(a, m, rep.ledger.epsilon);
  finish_report(rep, a, b, fin, eps0);

  SolveResult out;
  out.solution = fin.state;
  out.report = std::move(rep);
  return out;
}

nlohmann::json ledger_to_json(const ErrorLedger& l) {
  auto budget = [](const ErrorBudget& b) {
    return nlohmann::json{{"eta0", b.eta0}, {"eta1", b.eta1}, {"eta2", b.eta2},
                          {"eta3", b.eta3}, {"eta4", b.eta4}, {"W", b.W_norm}};
  };
  return {{"epsilon", l.epsilon},
          {"kappa_preconditioner", l.kappa_P},
          {"beta", l.beta},
          {"beta_in_range", l.beta_in_range},
          {"eta", budget(l.nominal)},
          {"eta_measured", budget(l.measured)},
          {"bound", number(l.bound)},
          {"bound_simplified", number(l.bound_simplified)},
          {"bound_relaxed", number(l.bound_relaxed)},
          {"measured_bound", number(l.measured_bound)},
          {"realized", l.realized},
          {"pass", l.pass}};
}

nlohmann::json solve_report_to_json(const SolveReport& r, const SVEConfig& cfg) {
  nlohmann::json probs = nlohmann::json::object();
  for (const auto& s : r.success_probs) probs[s.stage] = s.probability;
  nlohmann::json j = {{"pipeline", r.pipeline},
                      {"n", r.n},
                      {"fidelity", r.fidelity},
                      {"preconditioned_fidelity", r.preconditioned_fidelity},
                      {"success_probs", probs},
                      {"total_success_prob", r.total_success_prob},
                      {"error_ledger", ledger_to_json(r.ledger)},
                      {"cost", cost_to_json(r.cost)},
                      {"recommended", {{"epsilon", r.recommended_epsilon}, {"phase_bits", r.recommended_phase_bits}}},
                      {"config",
                       {{"phase_bits", cfg.phase_bits},
                        {"eps0", r.eps0},
                        {"branch_floor", cfg.branch_floor},
                        {"shots", cfg.shots},
                        {"seed", cfg.seed},
                        {"garbage_policy", to_string(cfg.garbage_policy)}}},
                      {"solution", io::vector_to_json(r.solution)["values"]},
                      {"classical", io::vector_to_json(r.classical)["values"]}};
  if (r.eigenvalue_stage) {
    const auto& e = *r.eigenvalue_stage;
    // The success probability is the squared amplitude ||C||_F / ||A||_F.
    j["eigenvalue_state"] = {{"success_prob", e.success_prob},
                             {"amplitude_ratio", e.amplitude_ratio},
                             {"norm_estimate", e.norm_estimate},
                             {"eigenvalues", io::vector_to_json(e.eigvals)["values"]}};
  }
  return j;
}

std::string solve_csv_header() {
  return "pipeline,n,phase_bits,eps0,fidelity,total_success_prob,realized,bound,bound_simplified,bound_relaxed,pass,kappa_A,"
         "kappa_P,kappa_PA";
}

std::string solve_csv_row(const SolveReport& r) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  const CostInputs& in = r.cost.inputs;
  out << r.pipeline << ',' << r.n << ',' << r.phase_bits << ',' << r.eps0 << ',' << r.fidelity << ','
      << r.total_success_prob << ',' << r.ledger.realized << ',' << r.ledger.bound << ',' << r.ledger.bound_simplified << ','
      << r.ledger.bound_relaxed << ',' << (r.ledger.pass ? "PASS" : "FAIL") << ',' << in.kappa_A << ',' << in.kappa_P << ','
      << in.kappa_PA;
  return out.str();
}

}  // namespace cpqls
