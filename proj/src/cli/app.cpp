#include "cpqls/cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

namespace cpqls::cli {

std::string to_string(Command c) {
  switch (c) {
    case Command::precondition: return "precondition";
    case Command::spectrum: return "spectrum";
    case Command::sve: return "sve";
    case Command::solve: return "solve";
    case Command::general_solve: return "general-solve";
    case Command::bench: return "bench";
  }
  return "unknown";
}

MatrixFormat parse_matrix_format(const std::string& name) {
  if (name == "auto") return MatrixFormat::automatic;
  if (name == "mtx") return MatrixFormat::mtx;
  if (name == "json") return MatrixFormat::json;
  if (name == "toeplitz") return MatrixFormat::toeplitz;
  if (name == "symbol") return MatrixFormat::symbol;
  throw Error(ErrorKind::domain, "unknown matrix format '" + name + "'");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io: return exit_io;
    case ErrorKind::parse:
    case ErrorKind::non_finite: return exit_parse;
    case ErrorKind::singular:
    case ErrorKind::zero_column: return exit_singular;
    case ErrorKind::super_optimal_undefined: return exit_super_optimal_undefined;
    case ErrorKind::cap_exceeded: return exit_cap_exceeded;
    case ErrorKind::fidelity_below_threshold: return exit_fidelity_below_threshold;
    case ErrorKind::dimension:
    case ErrorKind::domain: return exit_usage;
    default: return exit_other;
  }
}

SVEConfig RunConfig::sve_config() const {
  SVEConfig c;
  c.phase_bits = phase_bits;
  c.shots = shots;
  c.seed = seed;
  c.garbage_policy = garbage_policy;
  c.branch_floor = branch_floor;
  return c;
}

namespace {

int report_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  const nlohmann::json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
  err << j.dump() << '\n';
  return code;
}

void dispatch(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::precondition: return cmd_precondition(cfg, out);
    case Command::spectrum: return cmd_spectrum(cfg, out);
    case Command::sve: return cmd_sve(cfg, out);
    case Command::solve: return cmd_solve(cfg, out);
    case Command::general_solve: return cmd_general_solve(cfg, out);
    case Command::bench: return cmd_bench(cfg, out);
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circulant-preconditioned linear-system solver on a statevector simulator", "cpqls"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("CPQLS_OUT_DIR"); env && *env) cfg.out_dir = env;
  std::string format = "auto", precond = "optimal", garbage = "exact-uncompute";
  std::vector<std::string> emit = {"json"};
  std::vector<Index> sweep;
  Index n = 0;
  double assert_fid = 0.0;

  struct Sub {
    Command command;
    const char* help;
  };
  const Sub subs[] = {
      {Command::precondition, "Build a circulant preconditioner"},
      {Command::spectrum, "Report condition numbers and eigenvalue clustering"},
      {Command::sve, "Run singular value estimation on the right-hand side"},
      {Command::solve, "Circulant-preconditioned solve"},
      {Command::general_solve, "Solve with a general preconditioner matrix"},
      {Command::bench, "Evaluate the cost model"},
  };
  std::vector<std::pair<CLI::App*, Command>> registered;
  for (const Sub& s : subs) {
    CLI::App* sc = app.add_subcommand(to_string(s.command), s.help);
    sc->add_option("--matrix", cfg.matrix_path, "Matrix file (.mtx or .json)")->required();
    sc->add_option("--format", format, "Matrix format")
        ->check(CLI::IsMember({"auto", "mtx", "json", "toeplitz", "symbol"}));
    sc->add_option("--n", n, "Size for symbol input")->check(CLI::PositiveNumber);
    sc->add_option("--sweep", sweep, "Sizes for symbol input")->delimiter(',');
    sc->add_option("--rhs", cfg.rhs_path, "Right-hand side (.json or .mtx); default e_0");
    sc->add_option("--precond", precond, "Preconditioner kind")
        ->check(CLI::IsMember({"strang", "optimal", "superoptimal", "identity"}));
    sc->add_option("--phase-bits", cfg.phase_bits, "Phase register bits");
    sc->add_option("--eps0", cfg.eps0, "Target accuracy");
    sc->add_option("--seed", cfg.seed, "Sampling seed");
    sc->add_option("--workers", cfg.workers, "Instances run concurrently")->check(CLI::PositiveNumber);
    sc->add_option("--out-dir", cfg.out_dir, "Output directory")->envname("CPQLS_OUT_DIR");
    sc->add_option("--emit", emit, "Output formats")->delimiter(',')->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("--eps-grid", cfg.eps_grid, "Outlier radii for spectrum")->delimiter(',');
    sc->add_option("--garbage-policy", garbage, "SVE garbage handling")
        ->check(CLI::IsMember({"exact-uncompute", "keep-ancilla"}));
    sc->add_option("--shots", cfg.shots, "Value-register draws");
    sc->add_option("--branch-floor", cfg.branch_floor, "Outcome probability ignored by inversion");
    if (s.command == Command::sve) sc->add_flag("--reverse", cfg.reverse, "Run the reverse direction");
    if (s.command == Command::solve || s.command == Command::general_solve)
      sc->add_option("--assert-fidelity", assert_fid, "Exit with code 7 below this fidelity");
    if (s.command == Command::general_solve)
      sc->add_option("--preconditioner-matrix", cfg.preconditioner_matrix, "Preconditioner matrix file");
    registered.emplace_back(sc, s.command);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    return report_error(err, "usage", e.what(), exit_usage);
  }

  try {
    for (const auto& [sc, command] : registered) {
      if (!sc->parsed()) continue;
      cfg.command = command;
      if (sc->count("--n")) cfg.n = n;
      if (const CLI::Option* o = sc->get_option_no_throw("--assert-fidelity"); o && o->count())
        cfg.assert_fidelity = assert_fid;
    }
    cfg.format = parse_matrix_format(format);
    cfg.precond = parse_preconditioner_kind(precond);
    cfg.garbage_policy = parse_garbage_policy(garbage);
    cfg.sweep = sweep;
    cfg.emit_json = std::find(emit.begin(), emit.end(), "json") != emit.end();
    cfg.emit_csv = std::find(emit.begin(), emit.end(), "csv") != emit.end();
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (!std::filesystem::is_directory(cfg.out_dir))
      throw Error(ErrorKind::io, "cannot create output directory " + cfg.out_dir.string());
    dispatch(cfg, out);
    return exit_ok;
  } catch (const Error& e) {
    return report_error(err, std::string(to_string(e.kind())), e.what(), exit_code_for(e.kind()));
  } catch (const nlohmann::json::exception& e) {
    return report_error(err, "parse", e.what(), exit_parse);
  } catch (const std::filesystem::filesystem_error& e) {
    return report_error(err, "io", e.what(), exit_io);
  } catch (const std::exception& e) {
    return report_error(err, "other", e.what(), exit_other);
  }
}

}  // namespace cpqls::cli
