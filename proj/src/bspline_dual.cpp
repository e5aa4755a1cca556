#include "sinhproj/bspline_dual.hpp"

#include <cmath>
#include <stdexcept>

namespace sinhproj {

namespace {

cplx sinc_half(cplx xi) {
  // sin(ξ/2)/(ξ/2), stable at 0
  cplx z = 0.5 * xi;
  if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

}  // namespace

DualGenerator::DualGenerator(int p) : p_(p) {
  // Φ(ξ) = Σ_k |φ̂(ξ+2πk)|² reduces to a short cosine sum; coefficients are
  // the autocorrelation values Σ_x φ(x)φ(x−k) of the integer shifts.
  switch (p) {
    case 1:
      cos_coeff_ = {2.0 / 3.0, 1.0 / 3.0};
      break;
    case 2:
      cos_coeff_ = {33.0 / 60.0, 26.0 / 60.0, 1.0 / 60.0};
      break;
    case 3:
      cos_coeff_ = {1208.0 / 2520.0, 1191.0 / 2520.0, 120.0 / 2520.0,
                    1.0 / 2520.0};
      break;
    default:
      throw std::invalid_argument("DualGenerator: order must be 1, 2 or 3");
  }

  // Pole heights: Φ(π+iv) = Σ_k c_k (−1)^k cosh(kv) has exactly p simple
  // zeros in v > 0.  Scan for sign changes, then bisect.
  auto g = [&](double v) {
    double s = 0.0;
    for (int k = 0; k <= p_; ++k)
      s += cos_coeff_[k] * (k % 2 ? -1.0 : 1.0) * std::cosh(k * v);
    return s;
  };
  double prev = g(0.0);
  for (double v = 0.05; v < 20.0 && static_cast<int>(v_.size()) < p_;
       v += 0.05) {
    double cur = g(v);
    if ((prev > 0.0) != (cur > 0.0)) {
      double lo = v - 0.05, hi = v;
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((g(lo) > 0.0) != (g(mid) > 0.0)) hi = mid; else lo = mid;
      }
      v_.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  if (static_cast<int>(v_.size()) != p_)
    throw std::logic_error("DualGenerator: pole search failed");
}

double DualGenerator::pole_height(int j) const {
  if (j < 1 || j > p_)
    throw std::out_of_range("DualGenerator::pole_height: bad row index");
  return v_[j - 1];
}

double DualGenerator::max_pole_height() const { return v_.back(); }

cplx DualGenerator::gen_ft(cplx xi) const {
  return std::pow(sinc_half(xi), p_ + 1);
}

cplx DualGenerator::denom(cplx xi) const {
  cplx s = cos_coeff_[0];
  for (int k = 1; k <= p_; ++k)
    s += cos_coeff_[k] * std::cos(static_cast<double>(k) * xi);
  return s;
}

cplx DualGenerator::dual_ft(cplx xi) const {
  if (std::abs(xi.imag()) <= 1.0) return gen_ft(xi) / denom(xi);

  // Large |Im ξ|: cos(kξ) overflows long before the ratio does.  Rewrite in
  // w = e^{iξ} (|w| < 1 after flipping sign by evenness):
  //   φ̂̃(ξ) = e^{iξ(p−1)/2} (w−1)^{p+1} / ((2i)^{p+1} (ξ/2)^{p+1} Q(w)),
  //   Q(w) = w^p Φ = Σ_k c_k (w^{p+k} + w^{p−k})/2.
  if (xi.imag() < 0.0) xi = -xi;
  cplx w = std::exp(cplx(0.0, 1.0) * xi);
  cplx q = 0.0;
  for (int k = 0; k <= p_; ++k)
    q += 0.5 * cos_coeff_[k] *
         (std::pow(w, p_ + k) + std::pow(w, p_ - k));
  cplx num = std::exp(cplx(0.0, 1.0) * xi * (0.5 * (p_ - 1))) *
             std::pow(w - 1.0, p_ + 1);
  cplx den = std::pow(cplx(0.0, 2.0), p_ + 1) * std::pow(0.5 * xi, p_ + 1) * q;
  return num / den;
}

cplx DualGenerator::residue(int ell, int j, int s) const {
  if (s != 1 && s != -1)
    throw std::invalid_argument("DualGenerator::residue: s must be +1 or -1");
  double v = pole_height(j);
  cplx pole((2.0 * ell + 1.0) * 3.14159265358979323846,
            static_cast<double>(s) * v);

  // Φ'((2ℓ+1)π + s·iv) = −s·i·Σ_k k c_k (−1)^k sinh(k v): independent of ℓ.
  double dsum = 0.0;
  for (int k = 1; k <= p_; ++k)
    dsum += k * cos_coeff_[k] * (k % 2 ? -1.0 : 1.0) * std::sinh(k * v);
  cplx dphi = cplx(0.0, -static_cast<double>(s)) * dsum;

  // sin(pole/2) = (−1)^ℓ cosh(v/2), so φ̂ at the pole is real up to the
  // (ξ/2)^{p+1} factor.
  double sgn = (ell % 2 == 0) ? 1.0 : -1.0;
  cplx num = std::pow(sgn * std::cosh(0.5 * v), p_ + 1);
  cplx gen = num / std::pow(0.5 * pole, p_ + 1);
  return gen / dphi;
}

double DualGenerator::gen(double x) const {
  double ax = std::abs(x);
  switch (p_) {
    case 1:
      return ax >= 1.0 ? 0.0 : 1.0 - ax;
    case 2:
      if (ax >= 1.5) return 0.0;
      if (ax <= 0.5) return 0.75 - ax * ax;
      return 0.5 * (ax - 1.5) * (ax - 1.5);
    case 3:
      if (ax >= 2.0) return 0.0;
      if (ax <= 1.0) return 2.0 / 3.0 - ax * ax + 0.5 * ax * ax * ax;
      return (2.0 - ax) * (2.0 - ax) * (2.0 - ax) / 6.0;
    default:
      return 0.0;
  }
}

}  // namespace sinhproj
