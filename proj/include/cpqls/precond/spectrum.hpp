#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cpqls/precond/circulant.hpp"

namespace cpqls {

struct SpectrumReport {
  Index n = 0;
  double kappa_A = 0.0;
  double kappa_precond = 0.0;  // kappa(C^{-1} A)
  bool precond_singular = false;
  std::vector<cplx> eigvals_precond;  // sorted by real part, then imaginary part
  double min_abs_eig = 0.0;
  std::vector<double> eps_list;
  std::vector<Index> outlier_counts;  // parallel to eps_list

  // Number of eigenvalues with |lambda - 1| > eps.
  Index outliers(double eps) const;
};

SpectrumReport spectrum_report(const CirculantSpec& c, const DenseMatrix& a,
                               const std::vector<double>& eps_list);

nlohmann::json spectrum_to_json(const SpectrumReport& r);
// Summary lines prefixed with '#', then one row per eigenvalue.
std::string spectrum_to_csv(const SpectrumReport& r);

}  // namespace cpqls
