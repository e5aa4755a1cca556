#pragma once

#include <complex>
#include <vector>

namespace sinhproj {

using cplx = std::complex<double>;

// B-spline generator of order p (p=1 hat, p=2 quadratic, p=3 cubic) together
// with its dual in the span: the dual's Fourier transform is
//
//     φ̂̃(ξ) = φ̂(ξ) / Φ(ξ),   φ̂(ξ) = (sin(ξ/2)/(ξ/2))^{p+1},
//
// where Φ(ξ) = Σ_k |φ̂(ξ+2πk)|² is a cosine polynomial (Φ>0 on ℝ).  Extended
// to complex ξ, φ̂̃ is meromorphic with poles where Φ vanishes: at
// ξ = (2ℓ+1)π ± i v_j, one row of poles per height v_j, j = 1..p.
class DualGenerator {
 public:
  explicit DualGenerator(int p);

  int order() const { return p_; }

  cplx gen_ft(cplx xi) const;    // φ̂(ξ)
  cplx dual_ft(cplx xi) const;   // φ̂(ξ)/Φ(ξ)
  cplx denom(cplx xi) const;     // Φ(ξ)

  // Pole rows, sorted increasing: v_1 < ... < v_p.
  int pole_rows() const { return p_; }
  double pole_height(int j) const;             // v_j, j = 1..p
  double max_pole_height() const;              // v_p

  // Res(φ̂̃; (2ℓ+1)π + s·i v_j) for s = +1 (upper) / -1 (lower), ℓ ∈ ℤ.
  cplx residue(int ell, int j, int s) const;

  // φ(x) on [0, p+1] support shifted to be centered: φ(x), x ∈ ℝ.
  double gen(double x) const;

 private:
  int p_;
  std::vector<double> cos_coeff_;   // Φ(ξ) = Σ_k c_k cos(kξ), k = 0..p
  std::vector<double> v_;           // pole heights
};

}  // namespace sinhproj
