#include "cpqls/matcore/error.hpp"

namespace cpqls {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::non_finite: return "non_finite";
    case ErrorKind::index_out_of_range: return "index_out_of_range";
    case ErrorKind::singular: return "singular";
    case ErrorKind::super_optimal_undefined: return "super_optimal_undefined";
    case ErrorKind::zero_column: return "zero_column";
    case ErrorKind::cap_exceeded: return "cap_exceeded";
    case ErrorKind::non_unitary: return "non_unitary";
    case ErrorKind::domain: return "domain";
    case ErrorKind::invalid_rotation: return "invalid_rotation";
    case ErrorKind::empty_postselection: return "empty_postselection";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
    case ErrorKind::fidelity_below_threshold: return "fidelity_below_threshold";
  }
  return "unknown";
}

}  // namespace cpqls
