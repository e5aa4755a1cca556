#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// 15-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlX[15] = {
    -0.9879925180204854, -0.9372733924007059, -0.8482065834104272,
    -0.7244177313601700, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
    0.8482065834104272,  0.9372733924007059,  0.9879925180204854};
constexpr double kGlW[15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

// Φ(ξ) = Σ_k c_k cos(kξ); c_k are the sampled autocorrelation of the
// order-p B-spline (B_{2p+1} at the integers, doubled off-centre).
const std::vector<double>& cos_coeffs(int p) {
  static const std::vector<double> c1{2.0 / 3.0, 1.0 / 3.0};
  static const std::vector<double> c2{33.0 / 60.0, 26.0 / 60.0, 1.0 / 60.0};
  static const std::vector<double> c3{1208.0 / 2520.0, 1191.0 / 2520.0,
                                      120.0 / 2520.0, 1.0 / 2520.0};
  switch (p) {
    case 1: return c1;
    case 2: return c2;
    case 3: return c3;
  }
  throw std::invalid_argument("cos_coeffs: p must be 1, 2 or 3");
}

cplx denom(int p, cplx xi) {
  const auto& c = cos_coeffs(p);
  cplx s = c[0];
  for (int k = 1; k < (int)c.size(); ++k) s += c[k] * std::cos(double(k) * xi);
  return s;
}

}  // namespace

cplx dual_ft_direct(int p, cplx xi) {
  cplx num(1.0, 0.0);
  if (std::abs(xi) > 1e-14) {
    cplx s = std::sin(xi / 2.0) / (xi / 2.0);
    for (int k = 0; k <= p; ++k) num *= s;
  }
  return num / denom(p, xi);
}

double pole_height_bisect(int p, int j) {
  const auto& c = cos_coeffs(p);
  auto g = [&](double v) {
    double s = c[0], sign = -1.0;
    for (int k = 1; k < (int)c.size(); ++k, sign = -sign)
      s += sign * c[k] * std::cosh(double(k) * v);
    return s;
  };
  int found = 0;
  double lo = 1e-3, glo = g(lo);
  for (double hi = lo + 0.05; hi < 12.0; hi += 0.05) {
    double ghi = g(hi);
    if (glo * ghi < 0.0 && ++found == j) {
      double a = lo, b = hi;
      for (int it = 0; it < 120; ++it) {
        double m = 0.5 * (a + b);
        (g(a) * g(m) <= 0.0 ? b : a) = m;
      }
      return 0.5 * (a + b);
    }
    lo = hi;
    glo = ghi;
  }
  throw std::runtime_error("pole_height_bisect: root not found");
}

cplx residue_contour(int p, int ell, int j, int s, double radius, int npts) {
  cplx center((2.0 * ell + 1.0) * kPi, s * pole_height_bisect(p, j));
  cplx acc(0.0, 0.0);
  for (int m = 0; m < npts; ++m) {
    double th = 2.0 * kPi * m / npts;
    cplx z = std::polar(1.0, th);
    acc += dual_ft_direct(p, center + radius * z) * z;
  }
  return acc * (radius / double(npts));
}

double beta_quadrature(const sinhproj::CharExp& model, int p, double a,
                       double dt, double xk, double tol) {
  double xp = model.drift() * dt - xk;
  auto f = [&](double eta) {
    cplx arg = cplx(0.0, xp * a * eta) - dt * model.psi0(cplx(a * eta, 0.0));
    return std::exp(arg) * dual_ft_direct(p, cplx(eta, 0.0));
  };
  // cutoff where Δ̄·c∞·(aη)^ν has eaten ~46 e-folds past any C₀ offset
  double C1 = 46.0 / dt + std::fabs(model.C0());
  double eta_max = std::pow(C1 / model.c_inf(), 1.0 / model.order()) / a;
  eta_max = std::max(eta_max, 8.0 * kPi);
  double freq = std::fabs(xp) * a;
  auto integrate = [&](int n) {
    double h = eta_max / n;
    cplx s(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
      double mid = (i + 0.5) * h, r = 0.5 * h;
      for (int g = 0; g < 15; ++g) s += kGlW[g] * f(mid + r * kGlX[g]);
    }
    return s * (0.5 * h);
  };
  double tol_int = 0.5 * tol * kPi / std::sqrt(a);
  int n = std::max(16, (int)std::ceil(eta_max * (8.0 + freq) / (2.0 * kPi)));
  cplx prev = integrate(n);
  for (int it = 0;; ++it) {
    n *= 2;
    cplx cur = integrate(n);
    double diff = std::abs(cur - prev);
    prev = cur;
    if (diff < tol_int) break;
    if (it >= 6)
      throw std::runtime_error("beta_quadrature: refinement did not settle");
  }
  return std::sqrt(a) / kPi * prev.real();
}

std::vector<double> beta_gaussian_gram(double mean, double sd, double a,
                                       double x1, int nx, int pad) {
  double dx = 1.0 / a;
  auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  auto pdf = [](double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
  };
  // ∫_c^d (α + βx) N(x; mean, sd²) dx
  auto seg = [&](double alpha, double beta, double c, double d) {
    double zc = (c - mean) / sd, zd = (d - mean) / sd;
    double P = cdf(zd) - cdf(zc);
    double X = mean * P + sd * (pdf(zc) - pdf(zd));
    return alpha * P + beta * X;
  };
  int n = nx + 2 * pad;
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) {
    double xj = x1 + (i - pad) * dx;
    double m = seg(1.0 - a * xj, a, xj - dx, xj) +
               seg(1.0 + a * xj, -a, xj, xj + dx);
    rhs[i] = std::sqrt(a) * m;
  }
  // Thomas solve of the hat Gram system (1/6, 2/3, 1/6)
  std::vector<double> cp(n), dp(n);
  cp[0] = (1.0 / 6.0) / (2.0 / 3.0);
  dp[0] = rhs[0] / (2.0 / 3.0);
  for (int i = 1; i < n; ++i) {
    double denom = 2.0 / 3.0 - (1.0 / 6.0) * cp[i - 1];
    cp[i] = (1.0 / 6.0) / denom;
    dp[i] = (rhs[i] - (1.0 / 6.0) * dp[i - 1]) / denom;
  }
  std::vector<double> sol(n);
  sol[n - 1] = dp[n - 1];
  for (int i = n - 2; i >= 0; --i) sol[i] = dp[i] - cp[i] * sol[i + 1];
  return {sol.begin() + pad, sol.begin() + pad + nx};
}

double black_scholes_put(double S0, double K, double T, double r, double q,
                         double sigma) {
  auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  double sq = sigma * std::sqrt(T);
  double d1 = (std::log(S0 / K) + (r - q + 0.5 * sigma * sigma) * T) / sq;
  double d2 = d1 - sq;
  return K * std::exp(-r * T) * cdf(-d2) - S0 * std::exp(-q * T) * cdf(-d1);
}

}  // namespace oracle
