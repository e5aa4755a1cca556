#pragma once

#include <vector>

#include "sinhproj/bspline_dual.hpp"
#include "sinhproj/levy_models.hpp"

namespace sinhproj {

// Coefficients of the orthogonal projection of the transition density
// p_Δ̄(x) onto span{φ(a·x − k)}:  p̄(x) = a^{1/2} Σ_k β_k φ(a(x − x_k)) with
//
//     β_k = a^{1/2}/(2π) ∫ e^{i x'_k a η − Δ̄ ψ⁰(a η)} φ̂̃(η) dη,
//     x'_k = μΔ̄ − x_k,   x_k = x1 + (k−1)/a,   k = 1..nx.
struct BetaRequest {
  const CharExp* model = nullptr;
  int p = 1;            // generator order
  double a = 1.0;       // resolution (grid step 1/a)
  double dt = 1.0;      // time increment Δ̄
  double x1 = 0.0;      // leftmost grid point
  int nx = 0;           // number of coefficients
  double eps = 1e-12;   // absolute accuracy target per coefficient
  double kb = 0.85;     // contour scale safety factor
  double kd = 0.85;     // strip half-width safety factor
};

// Work counters for a beta_sinh call: trapezoid nodes behind each
// coefficient (shared per sign class) and total residue-series columns.
struct BetaDiagnostics {
  std::vector<int> quad_terms;
  long residue_cols = 0;
};

// Sinh-deformed quadrature.  Coefficients with x'_k > 0 are computed on a
// contour pushed up, x'_k < 0 down; crossing the generator-dual's pole rows
// picks up one residue series per row.  One contour (and one set of
// integrand evaluations) is shared by all coefficients of a sign class.
std::vector<double> beta_sinh(const BetaRequest& req);
std::vector<double> beta_sinh(const BetaRequest& req, BetaDiagnostics* diag);

// Plain flat-contour discretisation of the same integral with step
// π/alpha_half on the half-offset grid ξ_n = (n+1/2)·π/alpha_half,
// n = 0..n_xi−1 (the classical FFT pricing layout).  Aliases the density
// across x = ±alpha_half.
std::vector<double> beta_fft(const BetaRequest& req, double alpha_half,
                             int n_xi);

// Anti-aliased variant: widens the frequency grid by `enlarge` before
// discretising, keeping the same coefficient grid.
std::vector<double> beta_fft_aa(const BetaRequest& req, double alpha_half,
                                int n_xi, int enlarge = 6);

// Evaluates p̄(x) = a^{1/2} Σ_k β_k φ(a(x − x_k)) at the given points.
std::vector<double> project_density(const std::vector<double>& beta,
                                    double a, double x1, int p,
                                    const std::vector<double>& x);

}  // namespace sinhproj
