#include "cfx/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cfx {

namespace {

constexpr double kUnitCircleTol = 1e-6;
constexpr double kUnitCircleWideTol = 1e-4;
constexpr double kPairTol = 1e-5;

std::size_t count_unit(const std::vector<cplx>& roots, double tol) {
  return static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [&](const cplx& r) {
    return std::abs(std::abs(r) - 1.0) <= tol;
  }));
}

// Greedy matching of ρ with ρ' minimizing |ρ·conj(ρ') − 1|; each pair yields
// the root of the factor (the one inside the circle, or the averaged point
// on the circle for boundary zeros).
std::vector<cplx> select_factor_roots(const std::vector<cplx>& roots, double unit_tol) {
  const std::size_t n = roots.size();
  struct Candidate {
    double score;
    std::size_t i, j;
  };
  std::vector<Candidate> cands;
  cands.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      cands.push_back({std::abs(roots[i] * std::conj(roots[j]) - 1.0), i, j});
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.score < b.score; });

  std::vector<bool> used(n, false);
  std::vector<cplx> chosen;
  for (const Candidate& c : cands) {
    if (used[c.i] || used[c.j]) continue;
    if (c.score > kPairTol)
      throw FactorizationError("fejer_riesz_z: root pairing failed (mismatch " +
                               std::to_string(c.score) + ")");
    used[c.i] = used[c.j] = true;
    const cplx a = roots[c.i];
    const cplx b = roots[c.j];
    const bool a_unit = std::abs(std::abs(a) - 1.0) <= unit_tol;
    const bool b_unit = std::abs(std::abs(b) - 1.0) <= unit_tol;
    if (a_unit && b_unit) {
      const cplx mid = 0.5 * (a + b);
      chosen.push_back(mid / std::abs(mid));
    } else {
      const cplx inner = std::abs(a) <= std::abs(b) ? a : b;
      const cplx outer = std::abs(a) <= std::abs(b) ? b : a;
      chosen.push_back(0.5 * (inner + 1.0 / std::conj(outer)));
    }
    if (chosen.size() * 2 == n) break;
  }
  if (chosen.size() * 2 != n) throw FactorizationError("fejer_riesz_z: unpaired roots");
  return chosen;
}

}  // namespace

std::string to_string(FactorMethod method) {
  return method == FactorMethod::Roots ? "roots" : "spectral";
}

double factor_residual(const SeqZ& theta, const SeqZ& psi) {
  const SeqZ sq = convolve(theta, reverse_conjugate(theta));
  double r = 0.0;
  for (const auto& [k, v] : sq.entries()) r = std::max(r, std::abs(v - psi(k)));
  for (const auto& [k, v] : psi.entries()) r = std::max(r, std::abs(v - sq(k)));
  return r;
}

double factor_residual(const SeqZm& theta, const SeqZm& psi) {
  const SeqZm sq = convolve(theta, reverse_conjugate(theta));
  double r = 0.0;
  for (int k = 0; k < psi.modulus(); ++k) r = std::max(r, std::abs(sq[k] - psi[k]));
  return r;
}

Factorization fejer_riesz_z(const SeqZ& psi, double tol) {
  const PdCertificate cert = is_pd_z(psi, tol);
  if (!cert.is_pd)
    throw FactorizationError("fejer_riesz_z: input is not positive definite (" + cert.reason + ")");

  Factorization out;
  out.method = FactorMethod::Roots;
  const int n = psi.radius();
  if (n == 0) {
    out.theta = SeqZ{{0, std::sqrt(std::max(0.0, psi(0).real()))}};
    out.residual = factor_residual(std::get<SeqZ>(out.theta), psi);
    return out;
  }

  std::vector<cplx> q(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) q[static_cast<std::size_t>(k + n)] = psi(k);
  const std::vector<cplx> roots = poly_roots(q, 1e-9);

  double unit_tol = kUnitCircleTol;
  if (count_unit(roots, unit_tol) % 2 != 0) {
    unit_tol = kUnitCircleWideTol;
    if (count_unit(roots, unit_tol) % 2 != 0)
      throw FactorizationError("fejer_riesz_z: odd number of unit-circle roots");
  }
  const std::vector<cplx> factor_roots = select_factor_roots(roots, unit_tol);

  // Monic product Π (w − ρ_j), ascending coefficients.
  std::vector<cplx> p{1.0};
  for (const cplx& r : factor_roots) {
    std::vector<cplx> next(p.size() + 1, cplx(0.0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = std::move(next);
  }

  SeqZ monic;
  for (std::size_t k = 0; k < p.size(); ++k) monic.set(static_cast<int>(k), p[k]);
  const SeqZ sq = convolve(monic, reverse_conjugate(monic));
  double num = 0.0, den = 0.0;
  for (int k = -n; k <= n; ++k) {
    num += (std::conj(sq(k)) * psi(k)).real();
    den += std::norm(sq(k));
  }
  if (!(num > 0.0) || !(den > 0.0)) throw FactorizationError("fejer_riesz_z: degenerate scaling");
  const double scale = std::sqrt(num / den);
  const cplx phase = std::abs(p[0]) > 0.0 ? std::conj(p[0]) / std::abs(p[0]) : cplx(1.0);

  SeqZ theta;
  for (std::size_t k = 0; k < p.size(); ++k) theta.set(static_cast<int>(k), scale * phase * p[k]);
  out.residual = factor_residual(theta, psi);
  out.theta = std::move(theta);
  if (!(out.residual <= tol))
    throw FactorizationError("fejer_riesz_z: residual " + std::to_string(out.residual) +
                             " exceeds tolerance");
  return out;
}

Factorization sqrt_zm(const SeqZm& psi, const std::vector<double>& phases, double tol) {
  const int m = psi.modulus();
  if (!phases.empty() && static_cast<int>(phases.size()) != m)
    throw std::invalid_argument("sqrt_zm: phase vector length must equal the modulus");
  const PdCertificate cert = is_pd_zm(psi, tol);
  if (!cert.is_pd)
    throw FactorizationError("sqrt_zm: input is not positive definite (" + cert.reason + ")");

  const SeqZm spectrum = dft_zm(psi);
  SeqZm theta_hat(m);
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  for (int nu = 0; nu < m; ++nu) {
    const double v = std::max(0.0, spectrum[nu].real());
    const double phi = phases.empty() ? 0.0 : phases[static_cast<std::size_t>(nu)];
    theta_hat[nu] = inv_sqrt_m * std::sqrt(v) * std::polar(1.0, phi);
  }
  Factorization out;
  out.method = FactorMethod::Spectral;
  SeqZm theta = idft_zm(theta_hat);
  out.residual = factor_residual(theta, psi);
  out.theta = std::move(theta);
  return out;
}

}  // namespace cfx
