#pragma once

#include <complex>
#include <vector>

namespace sinhproj {

using cplx = std::complex<double>;

// In-place radix-2 FFT, forward = exp(-i 2πjk/n) convention.
// The inverse transform includes the 1/n factor.  n must be a power of two.
void fft(std::vector<cplx>& v, bool inverse = false);

// Circular convolution of two equal-length power-of-two sequences.
std::vector<cplx> circular_convolve(const std::vector<cplx>& x,
                                    const std::vector<cplx>& y);

}  // namespace sinhproj
