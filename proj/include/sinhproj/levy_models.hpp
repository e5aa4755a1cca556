#pragma once

#include <complex>
#include <memory>

namespace sinhproj {

using cplx = std::complex<double>;

// Characteristic exponent of an exponential-Lévy model,
//
//     E[e^{iξ X_t}] = e^{-t ψ(ξ)},   ψ(ξ) = -iμξ + ψ⁰(ξ),
//
// where ψ⁰ collects the diffusion/jump part and μ is the drift.  ψ⁰ is
// analytic on the strip Im ξ ∈ (μ₋, μ₊) and, for processes of order ν > 0,
// grows like c∞·|ξ|^ν inside the cone |arg(±ξ)| < γ_ν around the real axis:
//
//     Re ψ⁰(ξ) >= c∞(ω)|ξ|^ν − C₀   with c∞(ω) = c∞(0)·cos(νω) along rays.
//
// Those four numbers (ν, c∞(0), C₀ and the strip) are everything the
// quadrature machinery needs to size contours and truncations.
class CharExp {
 public:
  virtual ~CharExp() = default;

  virtual cplx psi0(cplx xi) const = 0;

  virtual double order() const = 0;      // ν
  virtual double c_inf() const = 0;      // c∞(0)
  virtual double C0() const = 0;
  virtual double strip_lo() const = 0;   // μ₋ < 0
  virtual double strip_hi() const = 0;   // μ₊ > 0
  virtual double drift() const = 0;      // μ
  virtual double rate() const = 0;       // r
  virtual double dividend() const = 0;   // q

  // Admissible rotation of the integration rays: γ_ν = min{1, 1/ν}·π/2.
  double cone_half_angle() const;

  cplx psi(cplx xi) const { return cplx(0.0, -drift()) * xi + psi0(xi); }

  // E[e^{iξ X_t}]
  cplx cf(double t, cplx xi) const;
};

// ψ⁰(ξ) = cΓ(-ν)[λ₊^ν − (λ₊+iξ)^ν + (-λ₋)^ν − (-λ₋-iξ)^ν],  ν ∈ (0,2)\{1}.
class Kobol : public CharExp {
 public:
  // Direct parametrisation; μ is the exponential-martingale drift r−q+ψ⁰(-i),
  // which requires λ₋ < -1 so that E[e^{X_t}] exists.
  Kobol(double nu, double c, double lambda_plus, double lambda_minus,
        double r, double q);

  // Second-moment parametrisation: picks c so that Var X_1 = m2.
  static Kobol from_second_moment(double nu, double m2, double lambda_plus,
                                  double lambda_minus, double r, double q);

  cplx psi0(cplx xi) const override;
  double order() const override { return nu_; }
  double c_inf() const override { return cinf_; }
  double C0() const override { return C0_; }
  double strip_lo() const override { return lambda_minus_; }
  double strip_hi() const override { return lambda_plus_; }
  double drift() const override { return mu_; }
  double rate() const override { return r_; }
  double dividend() const override { return q_; }

  double c() const { return c_; }

 private:
  double nu_, c_, lambda_plus_, lambda_minus_, r_, q_;
  double mu_, cinf_, C0_;
};

// Normal tempered stable:
// ψ⁰(ξ) = δ[(α² + (ξ+iβ)²)^{ν/2} − (α²−β²)^{ν/2}],  ν ∈ (0,2), |β| < α.
class NormalTemperedStable : public CharExp {
 public:
  NormalTemperedStable(double nu, double delta, double alpha, double beta,
                       double r, double q);

  cplx psi0(cplx xi) const override;
  double order() const override { return nu_; }
  double c_inf() const override { return delta_; }
  double C0() const override { return C0_; }
  double strip_lo() const override { return -alpha_ - beta_; }
  double strip_hi() const override { return alpha_ - beta_; }
  double drift() const override { return mu_; }
  double rate() const override { return r_; }
  double dividend() const override { return q_; }

 private:
  double nu_, delta_, alpha_, beta_, r_, q_;
  double mu_, C0_;
};

// ψ⁰(ξ) = σ²ξ²/2.  Entire, so the strip is only limited by what the pricing
// integrals need; we report a generous finite one.
class BlackScholes : public CharExp {
 public:
  BlackScholes(double sigma, double r, double q);

  cplx psi0(cplx xi) const override;
  double order() const override { return 2.0; }
  double c_inf() const override { return 0.5 * sigma_ * sigma_; }
  double C0() const override { return 0.0; }
  double strip_lo() const override { return -strip_; }
  double strip_hi() const override { return strip_; }
  double drift() const override { return mu_; }
  double rate() const override { return r_; }
  double dividend() const override { return q_; }

  double sigma() const { return sigma_; }

 private:
  double sigma_, r_, q_, mu_, strip_;
};

// n-th cumulant of X_1 (n = 2 or 4), by Richardson-extrapolated central
// differences of the cumulant-generating function s ↦ μs − ψ⁰(-is).
double cumulant(const CharExp& model, int n);

}  // namespace sinhproj
