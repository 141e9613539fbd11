#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's own FFT or SVD.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Direct O(n^2) unitary DFT, angles from std::polar.
inline CVector dense_dft(const CVector& v) {
  const Eigen::Index n = v.size();
  CVector out = CVector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j)
      out(k) += std::polar(1.0, -2.0 * kPi * static_cast<double>((j * k) % n) / static_cast<double>(n)) * v(j);
  return out / std::sqrt(static_cast<double>(n));
}

inline CMatrix dense_fourier(Eigen::Index n) {
  CMatrix f(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      f(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                           -2.0 * kPi * static_cast<double>((j * k) % n) / static_cast<double>(n));
  return f;
}

// Singular values (descending) from the Hermitian eigenproblem of A^dagger A.
inline std::vector<double> singular_values(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.adjoint() * a);
  std::vector<double> s;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) s.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  std::sort(s.rbegin(), s.rend());
  return s;
}

// Eigen's own Jacobi SVD, used as a second opinion.
inline std::vector<double> singular_values_jacobi(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  std::vector<double> s(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  return s;
}

inline CMatrix circulant_from_column(const CVector& c) {
  const Eigen::Index n = c.size();
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = c(((i - j) % n + n) % n);
  return m;
}

inline std::vector<cplx> sorted_eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m);
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double state_fidelity(const CVector& a, const CVector& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double ov = std::abs(a.dot(b)) / (na * nb);
  return ov * ov;
}

}  // namespace oracle
