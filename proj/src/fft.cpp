#include "sinhproj/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace sinhproj {

void fft(std::vector<cplx>& v, bool inverse) {
  const size_t n = v.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft: length must be a power of two");

  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }

  const double sgn = inverse ? 1.0 : -1.0;
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = sgn * 2.0 * 3.14159265358979323846 / static_cast<double>(len);
    cplx wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        cplx u = v[i + k];
        cplx t = w * v[i + k + len / 2];
        v[i + k] = u + t;
        v[i + k + len / 2] = u - t;
        w *= wl;
      }
    }
  }
  if (inverse) {
    double inv = 1.0 / static_cast<double>(n);
    for (auto& z : v) z *= inv;
  }
}

std::vector<cplx> circular_convolve(const std::vector<cplx>& x,
                                    const std::vector<cplx>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("circular_convolve: length mismatch");
  std::vector<cplx> a = x, b = y;
  fft(a);
  fft(b);
  for (size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  fft(a, true);
  return a;
}

}  // namespace sinhproj
