#pragma once

#include <cmath>
#include <complex>

namespace sinhproj {

using cplx = std::complex<double>;

// Deformation ξ = χ(y) = iω₁ + b·sinh(iω + y) of the real line.  As
// y → ±∞ the contour follows rays of angle ±ω through iω₁; near y = 0 it
// crosses the imaginary axis at i(ω₁ + b sin ω).  Pulling a Fourier-type
// integral onto the contour turns the integrand into something that decays
// doubly exponentially in y, so the infinite trapezoid rule converges at
// rate exp(-2πd/ζ) in the step ζ, d being the analyticity half-width in y.
struct SinhContour {
  double omega1 = 0.0;  // imaginary offset
  double b = 1.0;       // scale
  double omega = 0.0;   // ray angle
  double d = 0.0;       // half-width of the analyticity strip in y

  cplx map(double y) const {
    return cplx(0.0, omega1) + b * std::sinh(cplx(y, omega));
  }
  cplx dmap(double y) const { return b * std::cosh(cplx(y, omega)); }
  // Analytic continuation to complex y (for probing f at y = ±id).
  cplx map_c(cplx y) const {
    return cplx(0.0, omega1) + b * std::sinh(y + cplx(0.0, omega));
  }
  cplx dmap_c(cplx y) const { return b * std::cosh(y + cplx(0.0, omega)); }
};

// Fits the contour so that, at y = ±d, the asymptotes stay inside the strip
// Im ξ ∈ (mu_lo, mu_hi) and the rays stay inside the cone of admissible
// angles (gam_lo, gam_hi).  kb, kd < 1 back the parameters off the boundary.
SinhContour select_contour(double mu_lo, double mu_hi, double gam_lo,
                           double gam_hi, double kb = 0.85, double kd = 0.85);

// Step from the discretisation error bound H·e^{-2πd/ζ}/(1−e^{-2πd/ζ}) ≤ eps,
// H being (a bound on) the Hardy norm of the mapped integrand.
double trapezoid_step(double hardy_bound, double eps, double d);

// Largest |ξ| kept when truncating ∫ e^{ixξ − Δ̄ψ⁰(ξ)}φ̂̃(ξ/a) dξ on the sinh
// contour: the tail bound leads to  a1·Λ + a2·Λ^ν + ln Λ = C1  with
// a1 = |x|·sin ω ≥ 0 and a2 = Δ̄·c∞(0)·cos(νω) > 0; returns the root Λ.
double solve_truncation(double a1, double a2, double nu, double C1);

// Cutoff for the residue series over pole columns: root of Λ + a1·ln Λ = C1
// (a1 > 0, C1 > a1); caller converts the root back to a column count.
double solve_series_cutoff(double a1, double C1);

}  // namespace sinhproj
