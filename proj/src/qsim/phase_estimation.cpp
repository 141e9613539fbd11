#include "cpqls/qsim/phase_estimation.hpp"

#include <algorithm>
#include <cmath>

#include "cpqls/matcore/error.hpp"
#include "cpqls/matcore/fft.hpp"

namespace cpqls {
namespace {

void check_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) throw Error(ErrorKind::dimension, "phase estimation: U must be square");
  const double dev = (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
  if (!(dev <= tol))
    throw Error(ErrorKind::non_unitary, "phase estimation: U is not unitary (||U^dagger U - I||_F = " +
                                            std::to_string(dev) + ")");
}

Index outcomes_for(int t) {
  if (t < 1 || t > 30) throw Error(ErrorKind::domain, "phase estimation: phase bits must be in [1, 30]");
  return Index{1} << t;
}

void walsh_hadamard(CVector& v) {
  const Index T = v.size();
  for (Index h = 1; h < T; h *= 2)
    for (Index i = 0; i < T; i += 2 * h)
      for (Index k = i; k < i + h; ++k) {
        const cplx a = v(k), b = v(k + h);
        v(k) = a + b;
        v(k + h) = a - b;
      }
  v /= std::sqrt(static_cast<double>(T));
}

}  // namespace

StateVector phase_estimation(const CMatrix& u, const StateVector& input, int t, double tol) {
  check_unitary(u, tol);
  const Index T = outcomes_for(t);
  const Index d = input.size();
  if (u.rows() != d) throw Error(ErrorKind::dimension, "phase estimation: U does not act on the input registers");

  // Column x holds U^x |psi>.
  CMatrix powers(d, T);
  powers.col(0) = input.amps();
  for (Index x = 1; x < T; ++x) powers.col(x) = u * powers.col(x - 1);

  const double scale = 1.0 / std::sqrt(static_cast<double>(T));
  CVector out(d * T);
  for (Index s = 0; s < d; ++s) out.segment(s * T, T) = fft(powers.row(s).transpose()) * scale;

  auto dims = input.dims();
  auto labels = input.labels();
  dims.push_back(T);
  labels.push_back("phase");
  return StateVector(std::move(dims), std::move(labels), std::move(out));
}

std::vector<CMatrix> inverse_powers_of_two(const CMatrix& u, int t) {
  std::vector<CMatrix> powers;
  CMatrix v = u.adjoint();
  for (int b = 0; b < t; ++b) {
    powers.push_back(v);
    if (b + 1 < t) v = v * v;
  }
  return powers;
}

CMatrix inverse_phase_estimation(const CMatrix& u, const CMatrix& slices) {
  const Index T = slices.cols();
  int t = 0;
  while ((Index{1} << t) < T) ++t;
  return inverse_phase_estimation(inverse_powers_of_two(u, t), slices);
}

CMatrix inverse_phase_estimation(const std::vector<CMatrix>& inverse_powers, const CMatrix& slices) {
  const Index d = slices.rows(), T = slices.cols();
  if (T < 1 || (T & (T - 1)) != 0 || (Index{1} << inverse_powers.size()) != T)
    throw Error(ErrorKind::dimension, "inverse phase estimation: T must be 2^t with one power per bit");
  for (const auto& p : inverse_powers)
    if (p.rows() != d || p.cols() != d) throw Error(ErrorKind::dimension, "inverse phase estimation: size mismatch");

  // QFT on the phase register (the inverse of the transform used forward).
  CMatrix z(d, T);
  for (Index s = 0; s < d; ++s) z.row(s) = ifft(slices.row(s).transpose()).transpose();

  // Controlled U^{-x}, one power-of-two factor per bit of x.
  for (std::size_t b = 0; b < inverse_powers.size(); ++b) {
    const Index bit = Index{1} << b;
    for (Index x = 0; x < T; ++x)
      if (x & bit) z.col(x) = inverse_powers[b] * z.col(x);
  }

  for (Index s = 0; s < d; ++s) {
    CVector row = z.row(s).transpose();
    walsh_hadamard(row);
    z.row(s) = row.transpose();
  }
  return z;
}

double qpe_probability(double phi, Index y, Index T) {
  double delta = phi - static_cast<double>(y) / static_cast<double>(T);
  delta -= std::round(delta);
  if (std::abs(delta) < 1e-14) return 1.0;
  const double num = std::sin(kPi * static_cast<double>(T) * delta);
  const double den = static_cast<double>(T) * std::sin(kPi * delta);
  return (num * num) / (den * den);
}

double signed_phase(Index y, Index T) {
  const double phi = static_cast<double>(y) / static_cast<double>(T);
  return 2 * y < T ? phi : phi - 1.0;
}

Index value_index(Index y, Index T) { return 2 * y < T ? y : T - y; }

Index best_outcome(double phi, Index T) {
  long long y = std::llround(phi * static_cast<double>(T)) % T;
  if (y < 0) y += T;
  return static_cast<Index>(y);
}

Index median_of_shots(const std::vector<double>& probs, Index shots, Rng& rng) {
  if (shots <= 0) throw Error(ErrorKind::domain, "median_of_shots: need at least one shot");
  std::vector<Index> draws;
  for (Index s = 0; s < shots; ++s) draws.push_back(sample_outcome(probs, rng));
  std::nth_element(draws.begin(), draws.begin() + (shots - 1) / 2, draws.end());
  return draws[static_cast<std::size_t>((shots - 1) / 2)];
}

}  // namespace cpqls
