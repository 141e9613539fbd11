#pragma once

namespace cpqls {

// Default numerical thresholds. Every operation that compares against one
// of these takes it through a defaulted parameter so callers can override.
struct Tolerances {
  double unitary = 1e-12;
  double svd_reconstruction = 1e-10;
  double rank = 1e-12;           // relative to sigma_max
  double circulant_singular = 1e-12;  // relative to max |lambda_k|
  double unitarity_check = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace cpqls
