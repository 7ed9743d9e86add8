#include "cfx/poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cfx {

namespace {

using cplx = std::complex<double>;

constexpr int kMaxIterations = 800;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// p(w), p'(w) and Σ|a_i||w|^i (the backward-error scale) in one pass.
struct HornerResult {
  cplx value;
  cplx derivative;
  double scale;
};

HornerResult horner(const std::vector<cplx>& a, cplx w) {
  cplx p = a.back();
  cplx dp = 0.0;
  double s = std::abs(a.back());
  const double aw = std::abs(w);
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    dp = dp * w + p;
    p = p * w + a[i];
    s = s * aw + std::abs(a[i]);
  }
  return {p, dp, s};
}

}  // namespace

cplx poly_eval(const std::vector<cplx>& coeffs, cplx w) {
  if (coeffs.empty()) return 0.0;
  cplx p = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) p = p * w + coeffs[i];
  return p;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs, double tol) {
  double amax = 0.0;
  for (const cplx& c : coeffs) amax = std::max(amax, std::abs(c));
  if (amax == 0.0) throw std::invalid_argument("poly_roots: zero polynomial");

  std::size_t hi = coeffs.size();
  while (hi > 0 && std::abs(coeffs[hi - 1]) <= kEps * amax * 1e-2) --hi;
  std::size_t lo = 0;
  while (lo < hi && coeffs[lo] == cplx(0.0)) ++lo;

  std::vector<cplx> roots(lo, cplx(0.0));
  std::vector<cplx> a(coeffs.begin() + static_cast<std::ptrdiff_t>(lo),
                      coeffs.begin() + static_cast<std::ptrdiff_t>(hi));
  const std::size_t n = a.empty() ? 0 : a.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-a[0] / a[1]);
    return roots;
  }

  const double radius = std::pow(std::abs(a[0] / a[n]), 1.0 / static_cast<double>(n));
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }

  std::vector<bool> done(n, false);
  bool converged = false;
  for (int it = 0; it < kMaxIterations && !converged; ++it) {
    converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const HornerResult h = horner(a, z[k]);
      if (std::abs(h.value) <= 4.0 * kEps * h.scale) {
        done[k] = true;
        continue;
      }
      converged = false;
      const cplx ratio = h.value / h.derivative;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const cplx step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[k])) done[k] = true;
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    const HornerResult h = horner(a, z[k]);
    if (!(std::abs(h.value) <= tol * h.scale))
      throw RootFindingError("poly_roots: Aberth iteration did not converge (degree " +
                             std::to_string(n) + ")");
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace cfx
