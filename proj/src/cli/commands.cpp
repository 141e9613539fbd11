#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "cpqls/cli/app.hpp"
#include "cpqls/matcore/io.hpp"
#include "cpqls/matcore/toeplitz.hpp"
#include "cpqls/precond/spectrum.hpp"
#include "cpqls/solver/pipeline.hpp"

namespace cpqls::cli {

namespace {

std::string lower_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return ext;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return s.str();
}

std::string short_fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string file_stem(Command c) {
  std::string s = to_string(c);
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

// Runs f over the instances with at most `workers` in flight and returns the
// results in instance order. The first failure in instance order is rethrown.
template <class F>
auto map_instances(const std::vector<Instance>& inst, int workers, F f) {
  using R = decltype(f(inst.front()));
  std::vector<R> results;
  results.reserve(inst.size());
  const std::size_t batch = static_cast<std::size_t>(std::max(1, workers));
  for (std::size_t start = 0; start < inst.size(); start += batch) {
    std::vector<std::future<R>> futures;
    const std::size_t stop = std::min(inst.size(), start + batch);
    for (std::size_t i = start; i < stop; ++i)
      futures.push_back(std::async(batch == 1 ? std::launch::deferred : std::launch::async,
                                   [&f, &inst, i] { return f(inst[i]); }));
    for (auto& fu : futures) results.push_back(fu.get());
  }
  return results;
}

void emit(const RunConfig& cfg, const nlohmann::json& j, const std::string& csv) {
  const std::string stem = file_stem(cfg.command);
  if (cfg.emit_json) io::write_text_file(cfg.out_dir / (stem + ".json"), j.dump(2) + "\n");
  if (cfg.emit_csv) io::write_text_file(cfg.out_dir / (stem + ".csv"), csv);
}

nlohmann::json header(const RunConfig& cfg) {
  return {{"command", to_string(cfg.command)}, {"preconditioner", to_string(cfg.precond)}};
}

CirculantSpec preconditioner_for(const RunConfig& cfg, const DenseMatrix& a) {
  return build_preconditioner(cfg.precond, a);
}

}  // namespace

DenseMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  if (path.empty()) throw Error(ErrorKind::io, "no matrix file given (--matrix)");
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::io, "cannot open " + path.string());
  if (format == MatrixFormat::automatic)
    format = lower_extension(path) == ".mtx" ? MatrixFormat::mtx : MatrixFormat::json;
  switch (format) {
    case MatrixFormat::mtx:
      return io::read_matrix_market(path);
    case MatrixFormat::toeplitz:
      return io::toeplitz_from_json(io::read_json_file(path)).materialize();
    case MatrixFormat::symbol:
      throw Error(ErrorKind::domain, "a symbol file does not describe a single matrix");
    default: {
      const nlohmann::json j = io::read_json_file(path);
      if (j.is_object() && j.contains("t")) return io::toeplitz_from_json(j).materialize();
      return io::matrix_from_json(j);
    }
  }
}

std::vector<Instance> load_instances(const RunConfig& cfg) {
  MatrixFormat format = cfg.format;
  if (format == MatrixFormat::automatic && lower_extension(cfg.matrix_path) == ".json" &&
      std::filesystem::exists(cfg.matrix_path)) {
    const nlohmann::json j = io::read_json_file(cfg.matrix_path);
    if (j.is_object() && j.contains("coeffs")) format = MatrixFormat::symbol;
  }
  std::vector<Instance> out;
  if (format == MatrixFormat::symbol) {
    if (!std::filesystem::exists(cfg.matrix_path)) throw Error(ErrorKind::io, "cannot open " + cfg.matrix_path.string());
    const SymbolSpec s = io::symbol_from_json(io::read_json_file(cfg.matrix_path));
    std::vector<Index> sizes = cfg.sweep;
    if (cfg.n) sizes.insert(sizes.begin(), *cfg.n);
    if (sizes.empty()) throw Error(ErrorKind::domain, "symbol input needs --n or --sweep");
    for (Index n : sizes) {
      if (n < 1) throw Error(ErrorKind::domain, "sizes must be positive");
      out.push_back({"n=" + std::to_string(n), toeplitz_from_symbol(s, n).materialize()});
    }
    return out;
  }
  if (!cfg.sweep.empty()) throw Error(ErrorKind::domain, "--sweep applies to symbol input only");
  DenseMatrix a = load_matrix(cfg.matrix_path, format);
  if (cfg.n && *cfg.n != a.n())
    throw Error(ErrorKind::dimension, "--n " + std::to_string(*cfg.n) + " does not match the matrix size " +
                                          std::to_string(a.n()));
  out.push_back({cfg.matrix_path.filename().string(), std::move(a)});
  return out;
}

CVector load_rhs(const RunConfig& cfg, Index n) {
  CVector b;
  if (cfg.rhs_path.empty()) {
    b = CVector::Zero(n);
    b(0) = 1.0;
    return b;
  }
  if (!std::filesystem::exists(cfg.rhs_path)) throw Error(ErrorKind::io, "cannot open " + cfg.rhs_path.string());
  if (lower_extension(cfg.rhs_path) == ".mtx") {
    std::ifstream in(cfg.rhs_path);
    b = io::read_vector_market(in);
  } else {
    b = io::vector_from_json(io::read_json_file(cfg.rhs_path));
  }
  if (b.size() != n)
    throw Error(ErrorKind::dimension, "right-hand side has length " + std::to_string(b.size()) + ", expected " +
                                          std::to_string(n));
  if (!(b.norm() > 0.0)) throw Error(ErrorKind::domain, "right-hand side is zero");
  return b / b.norm();
}

void cmd_precondition(const RunConfig& cfg, std::ostream& out) {
  const auto inst = load_instances(cfg);
  const auto specs = map_instances(inst, cfg.workers, [&](const Instance& i) { return preconditioner_for(cfg, i.a); });
  nlohmann::json j = header(cfg);
  j["instances"] = nlohmann::json::array();
  std::string csv = "label,n,index,first_col_re,first_col_im,eig_re,eig_im\n";
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const CirculantSpec& c = specs[k];
    nlohmann::json e = circulant_to_json(c);
    e["label"] = inst[k].label;
    j["instances"].push_back(e);
    for (Index q = 0; q < c.n(); ++q)
      csv += inst[k].label + ',' + std::to_string(c.n()) + ',' + std::to_string(q) + ',' + fmt(c.first_col()(q).real()) +
             ',' + fmt(c.first_col()(q).imag()) + ',' + fmt(c.eigvals()(q).real()) + ',' + fmt(c.eigvals()(q).imag()) +
             '\n';
    const double mn = c.eigvals().cwiseAbs().minCoeff();
    out << "precondition " << inst[k].label << " kind=" << to_string(cfg.precond) << " n=" << c.n()
        << " max|lambda|=" << short_fmt(c.max_abs_eigval()) << " min|lambda|=" << short_fmt(mn) << '\n';
  }
  emit(cfg, j, csv);
}

void cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const auto inst = load_instances(cfg);
  const auto reps = map_instances(inst, cfg.workers, [&](const Instance& i) {
    return spectrum_report(preconditioner_for(cfg, i.a), i.a, cfg.eps_grid);
  });
  nlohmann::json j = header(cfg);
  j["instances"] = nlohmann::json::array();
  std::string csv = "label,n,kappa_A,kappa_precond,min_abs_eig";
  for (double e : cfg.eps_grid) csv += ",outliers_" + fmt(e);
  csv += '\n';
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const SpectrumReport& r = reps[k];
    nlohmann::json e = spectrum_to_json(r);
    e["label"] = inst[k].label;
    j["instances"].push_back(e);
    csv += inst[k].label + ',' + std::to_string(r.n) + ',' + fmt(r.kappa_A) + ',' + fmt(r.kappa_precond) + ',' +
           fmt(r.min_abs_eig);
    for (Index c : r.outlier_counts) csv += ',' + std::to_string(c);
    csv += '\n';
    if (cfg.emit_csv) io::write_text_file(cfg.out_dir / ("spectrum_n" + std::to_string(r.n) + ".csv"), spectrum_to_csv(r));
    out << "spectrum " << inst[k].label << " kappa_A=" << short_fmt(r.kappa_A)
        << " kappa_precond=" << short_fmt(r.kappa_precond) << " outliers=";
    for (std::size_t q = 0; q < r.outlier_counts.size(); ++q) out << (q ? "," : "") << r.outlier_counts[q];
    out << '\n';
  }
  emit(cfg, j, csv);
}

void cmd_sve(const RunConfig& cfg, std::ostream& out) {
  const auto inst = load_instances(cfg);
  const SVEConfig sc = cfg.sve_config();
  const auto results = map_instances(inst, cfg.workers, [&](const Instance& i) {
    validate_config(sc, i.a.n());
    const WalkOperator w = WalkOperator::build(i.a);
    const CVector x = load_rhs(cfg, i.a.n());
    return cfg.reverse ? sve_reverse(w, x, sc) : sve_forward(w, x, sc);
  });
  nlohmann::json j = header(cfg);
  j.erase("preconditioner");
  j["instances"] = nlohmann::json::array();
  const std::string first = sve_distribution_csv(results.front());
  std::string csv = "label," + first.substr(0, first.find('\n') + 1);
  for (std::size_t k = 0; k < inst.size(); ++k) {
    nlohmann::json e = sve_to_json(results[k]);
    e["label"] = inst[k].label;
    j["instances"].push_back(e);
    std::istringstream rows(sve_distribution_csv(results[k]));
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) csv += inst[k].label + ',' + line + '\n';
    const auto& br = results[k].branches;
    const auto top = std::max_element(br.begin(), br.end(),
                                      [](const SveBranch& a, const SveBranch& b) { return a.probability < b.probability; });
    out << "sve " << inst[k].label << " n=" << results[k].n << " t=" << results[k].phase_bits
        << " clean_weight=" << short_fmt(results[k].clean_weight) << " top_sigma=" << short_fmt(top->sigma_tilde)
        << " p=" << short_fmt(top->probability) << '\n';
  }
  emit(cfg, j, csv);
}

namespace {

void finish_solves(const RunConfig& cfg, const std::vector<Instance>& inst, const std::vector<SolveReport>& reps,
                   std::ostream& out) {
  const SVEConfig sc = cfg.sve_config();
  nlohmann::json j = header(cfg);
  j["instances"] = nlohmann::json::array();
  std::string csv = "label," + solve_csv_header() + '\n';
  bool below = false;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const SolveReport& r = reps[k];
    nlohmann::json e = solve_report_to_json(r, sc);
    e["label"] = inst[k].label;
    j["instances"].push_back(e);
    csv += inst[k].label + ',' + solve_csv_row(r) + '\n';
    out << to_string(cfg.command) << ' ' << inst[k].label << " n=" << r.n << " fidelity=" << short_fmt(r.fidelity)
        << " success=" << short_fmt(r.total_success_prob) << " bound=" << (r.ledger.pass ? "PASS" : "FAIL") << '\n';
    if (cfg.assert_fidelity && r.fidelity < *cfg.assert_fidelity) below = true;
  }
  emit(cfg, j, csv);
  if (below)
    throw Error(ErrorKind::fidelity_below_threshold, "fidelity below the asserted threshold " + fmt(*cfg.assert_fidelity));
}

}  // namespace

void cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const auto inst = load_instances(cfg);
  const SVEConfig sc = cfg.sve_config();
  const auto reps = map_instances(inst, cfg.workers, [&](const Instance& i) {
    return preconditioned_solve(i.a, load_rhs(cfg, i.a.n()), sc, cfg.eps0).report;
  });
  finish_solves(cfg, inst, reps, out);
}

void cmd_general_solve(const RunConfig& cfg, std::ostream& out) {
  const auto inst = load_instances(cfg);
  const SVEConfig sc = cfg.sve_config();
  std::optional<DenseMatrix> given;
  if (!cfg.preconditioner_matrix.empty()) given = load_matrix(cfg.preconditioner_matrix, MatrixFormat::automatic);
  const auto reps = map_instances(inst, cfg.workers, [&](const Instance& i) {
    const DenseMatrix m = given ? *given : preconditioner_for(cfg, i.a).materialize();
    if (m.n() != i.a.n()) throw Error(ErrorKind::dimension, "preconditioner size does not match the matrix");
    return general_preconditioned_solve(i.a, m, load_rhs(cfg, i.a.n()), sc, cfg.eps0).report;
  });
  finish_solves(cfg, inst, reps, out);
}

void cmd_bench(const RunConfig& cfg, std::ostream& out) {
  const auto inst = load_instances(cfg);
  const auto reps = map_instances(inst, cfg.workers, [&](const Instance& i) {
    return cost_report(i.a, preconditioner_for(cfg, i.a), cfg.eps0);
  });
  nlohmann::json j = header(cfg);
  j["instances"] = nlohmann::json::array();
  std::string csv = "label,n,sparsity,kappa_A,kappa_P,kappa_PA,frob_A,frob_P,frob_PA,eps";
  for (const auto& [name, v] : reps.front().formula_values) csv += ',' + name;
  csv += '\n';
  for (std::size_t k = 0; k < inst.size(); ++k) {
    const CostReport& r = reps[k];
    const CostInputs& in = r.inputs;
    nlohmann::json e = cost_to_json(r);
    e["label"] = inst[k].label;
    j["instances"].push_back(e);
    csv += inst[k].label + ',' + std::to_string(in.n) + ',' + fmt(in.sparsity) + ',' + fmt(in.kappa_A) + ',' +
           fmt(in.kappa_P) + ',' + fmt(in.kappa_PA) + ',' + fmt(in.frob_A) + ',' + fmt(in.frob_P) + ',' +
           fmt(in.frob_PA) + ',' + fmt(in.eps);
    for (const auto& [name, v] : r.formula_values) csv += ',' + fmt(v);
    csv += '\n';
    out << "bench " << inst[k].label << " n=" << in.n << " kappa_A=" << short_fmt(in.kappa_A)
        << " kappa_PA=" << short_fmt(in.kappa_PA) << '\n';
  }
  emit(cfg, j, csv);
}

}  // namespace cpqls::cli
