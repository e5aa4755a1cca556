#include "sinhproj/levy_models.hpp"

#include <cmath>
#include <stdexcept>

namespace sinhproj {

namespace {

constexpr double kPi = 3.14159265358979323846;

// z^s on the principal branch.  std::pow(complex, double) does this already;
// the wrapper only exists to keep call sites honest about the branch choice.
cplx ppow(cplx z, double s) { return std::pow(z, s); }

}  // namespace

double CharExp::cone_half_angle() const {
  double nu = order();
  return std::min(1.0, 1.0 / nu) * kPi / 2.0;
}

cplx CharExp::cf(double t, cplx xi) const { return std::exp(-t * psi(xi)); }

// ==== KoBoL ================================================================

Kobol::Kobol(double nu, double c, double lambda_plus, double lambda_minus,
             double r, double q)
    : nu_(nu), c_(c), lambda_plus_(lambda_plus), lambda_minus_(lambda_minus),
      r_(r), q_(q) {
  if (nu <= 0.0 || nu >= 2.0 || nu == 1.0)
    throw std::invalid_argument("Kobol: nu must be in (0,2), nu != 1");
  if (c <= 0.0) throw std::invalid_argument("Kobol: c must be positive");
  // λ₋ < −1 keeps ξ = −i inside the strip, so E[e^{X_t}] is finite
  if (lambda_minus >= -1.0 || lambda_plus <= 0.0)
    throw std::invalid_argument(
        "Kobol: need lambda_minus < -1 and lambda_plus > 0");
  double g = std::tgamma(-nu) * c;
  C0_ = g * (std::pow(lambda_plus_, nu) + std::pow(-lambda_minus_, nu));
  cinf_ = -2.0 * g * std::cos(kPi * nu / 2.0);
  // E[e^{X_t}] = e^{t(μ − ψ⁰(-i))}, so μ = r − q + ψ⁰(-i)
  mu_ = r - q + psi0(cplx(0.0, -1.0)).real();
}

Kobol Kobol::from_second_moment(double nu, double m2, double lambda_plus,
                                double lambda_minus, double r, double q) {
  if (m2 <= 0.0) throw std::invalid_argument("Kobol: m2 must be positive");
  // Var X_1 = cΓ(2−ν)(λ₊^{ν−2} + (−λ₋)^{ν−2})
  double c = m2 / (std::tgamma(2.0 - nu) *
                   (std::pow(-lambda_minus, nu - 2.0) +
                    std::pow(lambda_plus, nu - 2.0)));
  return Kobol(nu, c, lambda_plus, lambda_minus, r, q);
}

cplx Kobol::psi0(cplx xi) const {
  const cplx i(0.0, 1.0);
  double lp = lambda_plus_, lm = lambda_minus_;
  cplx s = std::pow(lp, nu_) - ppow(lp + i * xi, nu_) +
           std::pow(-lm, nu_) - ppow(-lm - i * xi, nu_);
  return c_ * std::tgamma(-nu_) * s;
}

// ==== Normal tempered stable ==============================================

NormalTemperedStable::NormalTemperedStable(double nu, double delta,
                                           double alpha, double beta,
                                           double r, double q)
    : nu_(nu), delta_(delta), alpha_(alpha), beta_(beta), r_(r), q_(q) {
  if (nu <= 0.0 || nu >= 2.0)
    throw std::invalid_argument("NormalTemperedStable: nu must be in (0,2)");
  if (delta <= 0.0)
    throw std::invalid_argument("NormalTemperedStable: delta must be positive");
  if (std::abs(beta) >= alpha)
    throw std::invalid_argument("NormalTemperedStable: need |beta| < alpha");
  // strip is (−α−β, α−β); ξ = −i lies inside it iff α + β > 1
  if (alpha + beta <= 1.0)
    throw std::invalid_argument(
        "NormalTemperedStable: need alpha + beta > 1 for a martingale");
  C0_ = delta_ * std::pow(alpha_ * alpha_ - beta_ * beta_, nu_ / 2.0);
  mu_ = r - q + psi0(cplx(0.0, -1.0)).real();
}

cplx NormalTemperedStable::psi0(cplx xi) const {
  const cplx i(0.0, 1.0);
  cplx z = xi + i * beta_;
  double a2b2 = alpha_ * alpha_ - beta_ * beta_;
  return delta_ * (ppow(alpha_ * alpha_ + z * z, nu_ / 2.0) -
                   std::pow(a2b2, nu_ / 2.0));
}

// ==== Brownian =============================================================

BlackScholes::BlackScholes(double sigma, double r, double q)
    : sigma_(sigma), r_(r), q_(q) {
  if (sigma <= 0.0)
    throw std::invalid_argument("BlackScholes: sigma must be positive");
  mu_ = r - q - 0.5 * sigma * sigma;
  strip_ = 64.0;  // ψ⁰ is entire; any finite window works for the contours
}

cplx BlackScholes::psi0(cplx xi) const {
  return 0.5 * sigma_ * sigma_ * xi * xi;
}

// ==== cumulants ============================================================

double cumulant(const CharExp& model, int n) {
  // k(s) = ln E e^{sX_1} = μs − ψ⁰(-is); central differences in s with one
  // Richardson step (h, h/2).  ψ⁰ evaluates through terms of size λ^ν that
  // cancel down to O(s), leaving ~1e-15 of absolute noise per call, so the
  // fourth difference needs h^4 well above that: h ~ 0.25 balances the two
  // error sources at ~1e-8, while tiny steps drown κ₄ in round-off.
  auto k = [&](double s) {
    return model.drift() * s - model.psi0(cplx(0.0, -s)).real();
  };
  auto diff = [&](double h) -> double {
    if (n == 2) return (k(h) - 2.0 * k(0.0) + k(-h)) / (h * h);
    if (n == 4)
      return (k(2.0 * h) - 4.0 * k(h) + 6.0 * k(0.0) - 4.0 * k(-h) +
              k(-2.0 * h)) / (h * h * h * h);
    throw std::invalid_argument("cumulant: n must be 2 or 4");
  };
  const double margin = std::min(-model.strip_lo(), model.strip_hi());
  const double h = std::min(n == 2 ? 0.05 : 0.125, margin / 8.0);
  double d1 = diff(h), d2 = diff(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace sinhproj
