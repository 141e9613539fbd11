#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpqls/matcore/dense_matrix.hpp"
#include "cpqls/matcore/error.hpp"
#include "cpqls/precond/preconditioners.hpp"
#include "cpqls/qsim/sve.hpp"

namespace cpqls::cli {

enum class Command { precondition, spectrum, sve, solve, general_solve, bench };
enum class MatrixFormat { automatic, mtx, json, toeplitz, symbol };

std::string to_string(Command c);
MatrixFormat parse_matrix_format(const std::string& name);

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_io = 2,
  exit_parse = 3,
  exit_singular = 4,
  exit_super_optimal_undefined = 5,
  exit_cap_exceeded = 6,
  exit_fidelity_below_threshold = 7,
  exit_other = 8,
};

int exit_code_for(ErrorKind kind);

struct RunConfig {
  Command command = Command::solve;
  std::filesystem::path matrix_path;
  MatrixFormat format = MatrixFormat::automatic;
  std::optional<Index> n;            // size for symbol input
  std::vector<Index> sweep;          // sizes for symbol input
  std::filesystem::path rhs_path;    // empty: b = e_0
  PreconditionerKind precond = PreconditionerKind::optimal;
  std::filesystem::path preconditioner_matrix;  // general-solve; empty: materialized --precond
  int phase_bits = 8;
  double eps0 = 0.01;
  std::uint64_t seed = 0;
  int workers = 1;
  std::filesystem::path out_dir = ".";
  bool emit_json = true;
  bool emit_csv = false;
  std::optional<double> assert_fidelity;
  std::vector<double> eps_grid = {0.01, 0.05, 0.1, 0.2};
  GarbagePolicy garbage_policy = GarbagePolicy::exact_uncompute;
  Index shots = 0;
  double branch_floor = 1e-3;
  bool reverse = false;  // sve direction

  SVEConfig sve_config() const;
};

struct Instance {
  std::string label;
  DenseMatrix a;
};

// One instance per sweep size for symbol input, otherwise one.
std::vector<Instance> load_instances(const RunConfig& cfg);
DenseMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format);
// Unit-norm right-hand side; e_0 when no path is given.
CVector load_rhs(const RunConfig& cfg, Index n);

// Each command writes <command>.json and/or <command>.csv into out_dir and
// prints one summary line per instance to out.
void cmd_precondition(const RunConfig& cfg, std::ostream& out);
void cmd_spectrum(const RunConfig& cfg, std::ostream& out);
void cmd_sve(const RunConfig& cfg, std::ostream& out);
void cmd_solve(const RunConfig& cfg, std::ostream& out);
void cmd_general_solve(const RunConfig& cfg, std::ostream& out);
void cmd_bench(const RunConfig& cfg, std::ostream& out);

// Parses argv and dispatches. Errors go to err as one JSON object; the
// return value is the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cpqls::cli
