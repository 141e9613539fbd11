#include "cpqls/matcore/fft.hpp"

#include <cmath>
#include <vector>

#include "cpqls/matcore/error.hpp"

namespace cpqls {
namespace {

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform computing sum_j v[j] e^{sign 2 pi i jk/n}.
void radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<cplx> tw(half);
    for (std::size_t k = 0; k < half; ++k) {
      cplx w = root_of_unity(static_cast<std::int64_t>(k), static_cast<std::int64_t>(len));
      tw[k] = sign < 0 ? w : std::conj(w);
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + half] * tw[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

// Bluestein: jk = (j^2 + k^2 - (k-j)^2) / 2 turns the DFT into a convolution.
std::vector<cplx> bluestein(const CVector& v, int sign) {
  const Index n = v.size();
  std::size_t m = 1;
  while (m < static_cast<std::size_t>(2 * n - 1)) m <<= 1;

  // chirp[k] = e^{sign * pi i k^2 / n}; k^2 reduced mod 2n keeps the angle exact.
  std::vector<cplx> chirp(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    const std::int64_t k2 = (static_cast<std::int64_t>(k) * k) % (2 * n);
    cplx w = root_of_unity(k2, 2 * n);
    chirp[static_cast<std::size_t>(k)] = sign < 0 ? w : std::conj(w);
  }
  std::vector<cplx> a(m, cplx(0.0)), b(m, cplx(0.0));
  for (Index k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = v[k] * chirp[static_cast<std::size_t>(k)];
  b[0] = std::conj(chirp[0]);
  for (Index k = 1; k < n; ++k) {
    b[static_cast<std::size_t>(k)] = std::conj(chirp[static_cast<std::size_t>(k)]);
    b[m - static_cast<std::size_t>(k)] = std::conj(chirp[static_cast<std::size_t>(k)]);
  }
  radix2(a, -1);
  radix2(b, -1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  radix2(a, +1);
  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k)
    out[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] * inv_m * chirp[static_cast<std::size_t>(k)];
  return out;
}

CVector transform(const CVector& v, int sign) {
  const Index n = v.size();
  if (n == 0) throw Error(ErrorKind::dimension, "fft: empty vector");
  std::vector<cplx> out;
  if (is_power_of_two(n)) {
    out.assign(v.data(), v.data() + n);
    radix2(out, sign);
  } else {
    out = bluestein(v, sign);
  }
  return Eigen::Map<CVector>(out.data(), n);
}

}  // namespace

DenseMatrix fourier_matrix(Index n) {
  if (n <= 0) throw Error(ErrorKind::dimension, "fourier_matrix: n must be positive");
  CMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      f(j, k) = scale * root_of_unity(static_cast<std::int64_t>(j) * k, n);
  return DenseMatrix(std::move(f));
}

CVector dft_sum(const CVector& v) { return transform(v, -1); }

CVector fft(const CVector& v) {
  return transform(v, -1) / std::sqrt(static_cast<double>(v.size()));
}

CVector ifft(const CVector& v) {
  return transform(v, +1) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace cpqls
