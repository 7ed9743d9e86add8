#include "cfx/solver_zm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "cfx/lp_engine.hpp"

namespace cfx {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// cos/sin of 2πj/n for residues j, exact under j ↦ j mod n.
class UnitRoots {
 public:
  explicit UnitRoots(long long n) : n_(n), c_(static_cast<std::size_t>(n)), s_(static_cast<std::size_t>(n)) {
    for (long long j = 0; j < n; ++j) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      c_[static_cast<std::size_t>(j)] = std::cos(a);
      s_[static_cast<std::size_t>(j)] = std::sin(a);
    }
  }
  double cos(long long j) const { return c_[reduce(j)]; }
  double sin(long long j) const { return s_[reduce(j)]; }

 private:
  std::size_t reduce(long long j) const {
    long long r = j % n_;
    return static_cast<std::size_t>(r < 0 ? r + n_ : r);
  }
  long long n_;
  std::vector<double> c_, s_;
};

// A finite LP whose variables determine ψ, with the functional ψ(1) (or f(z))
// as ell_re + i·ell_im.
struct Program {
  LinearProgram lp;
  std::vector<double> ell_re;
  std::vector<double> ell_im;
  bool via_dual = false;
  std::string name;
  /// Basis of the previous solve; successive solves differ only in the
  /// objective, so it is a good start for the next one.
  std::vector<std::size_t> warm;
};

LpSolution run(Program& p) {
  const std::vector<std::size_t>* warm = p.warm.empty() ? nullptr : &p.warm;
  LpSolution sol = p.via_dual ? solve_lp_via_dual(p.lp, warm) : solve_lp(p.lp, warm);
  if (sol.optimal()) p.warm = sol.basis;
  return sol;
}

LpSolution run_objective(Program& p, const std::vector<double>& objective) {
  p.lp.objective = objective;
  LpSolution sol = run(p);
  if (!sol.optimal()) throw std::runtime_error(p.name + ": LP " + to_string(sol.status));
  return sol;
}

Formulation pick(Formulation requested, std::size_t fourier_rows, std::size_t coeff_rows) {
  if (requested != Formulation::Auto) return requested;
  // The coefficient program goes through its dual, whose right-hand side is
  // almost all zeros; cold starts there stall on degeneracy, so it must be
  // clearly smaller to win.
  return 2 * coeff_rows <= fourier_rows ? Formulation::Coefficient : Formulation::Fourier;
}

// ---- Z_m programs ---------------------------------------------------------

std::vector<int> excluded_half(const SupportZm& h) {
  std::vector<int> out;
  for (int k = 1; 2 * k <= h.modulus(); ++k)
    if (!h.contains(k)) out.push_back(k);
  return out;
}

// Real class, even spectrum: u_ν = ψ̂(ν) = ψ̂(m−ν), ν = 0..m/2.
Program real_fourier_zm(const SupportZm& h, const UnitRoots& w) {
  const int m = h.modulus();
  const int half = m / 2;
  const auto excluded = excluded_half(h);
  Program p;
  p.name = "k_m";
  p.lp = LinearProgram(1 + excluded.size(), static_cast<std::size_t>(half + 1));
  p.ell_re.assign(static_cast<std::size_t>(half + 1), 0.0);
  p.ell_im.assign(static_cast<std::size_t>(half + 1), 0.0);
  for (int nu = 0; nu <= half; ++nu) {
    const double weight = (nu == 0 || 2 * nu == m) ? 1.0 : 2.0;
    p.lp.constraints(0, nu) = weight;
    for (std::size_t r = 0; r < excluded.size(); ++r)
      p.lp.constraints(static_cast<Eigen::Index>(r + 1), nu) =
          weight * w.cos(static_cast<long long>(excluded[r]) * nu);
    p.ell_re[static_cast<std::size_t>(nu)] = weight * w.cos(nu);
  }
  p.lp.rhs[0] = 1.0;
  std::fill(p.lp.row_kinds.begin(), p.lp.row_kinds.end(), RowKind::Equal);
  return p;
}

SeqZm real_fourier_psi(const SupportZm& h, const UnitRoots& w, const std::vector<double>& u) {
  const int m = h.modulus();
  SeqZm psi(m);
  for (int k = 0; k < m; ++k) {
    double acc = 0.0;
    for (int nu = 0; nu <= m / 2; ++nu) {
      const double weight = (nu == 0 || 2 * nu == m) ? 1.0 : 2.0;
      acc += weight * u[static_cast<std::size_t>(nu)] * w.cos(static_cast<long long>(k) * nu);
    }
    psi[k] = acc;
  }
  return psi;
}

// Real class, coefficients a_k = ψ(k) = ψ(−k) for k in the half of H;
// rows m·ψ̂(ν) ≥ 0 for ν = 0..m/2.
Program real_coeff_zm(const SupportZm& h, const UnitRoots& w) {
  const int m = h.modulus();
  const auto hh = h.half();
  Program p;
  p.name = "k_m";
  p.via_dual = true;
  p.lp = LinearProgram(static_cast<std::size_t>(m / 2 + 1), hh.size());
  std::fill(p.lp.free_variable.begin(), p.lp.free_variable.end(), true);
  std::fill(p.lp.rhs.begin(), p.lp.rhs.end(), 1.0);
  for (int nu = 0; nu <= m / 2; ++nu)
    for (std::size_t j = 0; j < hh.size(); ++j) {
      const double c = (2 * hh[j] == m) ? 1.0 : 2.0;
      p.lp.constraints(nu, static_cast<Eigen::Index>(j)) = -c * w.cos(static_cast<long long>(hh[j]) * nu);
    }
  p.ell_re.assign(hh.size(), 0.0);
  p.ell_im.assign(hh.size(), 0.0);
  p.ell_re[0] = 1.0;  // hh[0] == 1 for admissible H
  return p;
}

SeqZm real_coeff_psi(const SupportZm& h, const std::vector<double>& a) {
  const auto hh = h.half();
  SeqZm psi(h.modulus());
  psi[0] = 1.0;
  for (std::size_t j = 0; j < hh.size(); ++j) {
    psi[hh[j]] = a[j];
    psi[-hh[j]] = a[j];
  }
  return psi;
}

// Complex class: u_ν = ψ̂(ν) ≥ 0 for every ν; ψ(k) = 0 for excluded k as
// real and imaginary rows.
Program complex_fourier_zm(const SupportZm& h, const UnitRoots& w) {
  const int m = h.modulus();
  const auto excluded = excluded_half(h);
  std::size_t rows = 1;
  for (int k : excluded) rows += (2 * k == m) ? 1 : 2;
  Program p;
  p.name = "cf_m";
  p.lp = LinearProgram(rows, static_cast<std::size_t>(m));
  p.lp.rhs[0] = 1.0;
  std::fill(p.lp.row_kinds.begin(), p.lp.row_kinds.end(), RowKind::Equal);
  p.ell_re.resize(static_cast<std::size_t>(m));
  p.ell_im.resize(static_cast<std::size_t>(m));
  for (int nu = 0; nu < m; ++nu) {
    p.lp.constraints(0, nu) = 1.0;
    Eigen::Index r = 1;
    for (int k : excluded) {
      const long long kn = static_cast<long long>(k) * nu;
      p.lp.constraints(r++, nu) = w.cos(kn);
      if (2 * k != m) p.lp.constraints(r++, nu) = w.sin(kn);
    }
    p.ell_re[static_cast<std::size_t>(nu)] = w.cos(nu);
    p.ell_im[static_cast<std::size_t>(nu)] = w.sin(nu);
  }
  return p;
}

SeqZm complex_fourier_psi(const std::vector<double>& u) {
  std::vector<cplx> spectrum(u.begin(), u.end());
  return idft_zm(SeqZm(std::move(spectrum)));
}

// Complex class, coefficients ψ(k) = x_k + i y_k for k in the half of H
// (y_k absent when 2k = m); rows m·ψ̂(ν) ≥ 0 for every ν.
Program complex_coeff_zm(const SupportZm& h, const UnitRoots& w) {
  const int m = h.modulus();
  const auto hh = h.half();
  std::size_t cols = 0;
  for (int k : hh) cols += (2 * k == m) ? 1 : 2;
  Program p;
  p.name = "cf_m";
  p.via_dual = true;
  p.lp = LinearProgram(static_cast<std::size_t>(m), cols);
  std::fill(p.lp.free_variable.begin(), p.lp.free_variable.end(), true);
  std::fill(p.lp.rhs.begin(), p.lp.rhs.end(), 1.0);
  for (int nu = 0; nu < m; ++nu) {
    Eigen::Index c = 0;
    for (int k : hh) {
      const long long kn = static_cast<long long>(k) * nu;
      if (2 * k == m) {
        p.lp.constraints(nu, c++) = -w.cos(kn);
      } else {
        p.lp.constraints(nu, c++) = -2.0 * w.cos(kn);
        p.lp.constraints(nu, c++) = -2.0 * w.sin(kn);
      }
    }
  }
  p.ell_re.assign(cols, 0.0);
  p.ell_im.assign(cols, 0.0);
  p.ell_re[0] = 1.0;
  if (2 != m) p.ell_im[1] = 1.0;
  return p;
}

SeqZm complex_coeff_psi(const SupportZm& h, const std::vector<double>& v) {
  const int m = h.modulus();
  SeqZm psi(m);
  psi[0] = 1.0;
  std::size_t c = 0;
  for (int k : h.half()) {
    cplx val;
    if (2 * k == m) {
      val = v[c++];
    } else {
      val = cplx(v[c], v[c + 1]);
      c += 2;
    }
    psi[k] = val;
    psi[-k] = std::conj(val);
  }
  return psi;
}

// Projects onto the constraints that hold exactly by construction (ψ(0) = 1,
// support in H, ψ = ψ̃, real values in the real class) and mixes in δ·δ_0 so
// that the spectrum is nonnegative.
struct Repaired {
  SeqZm psi;
  double delta = 0.0;
};

Repaired repair_zm(const SupportZm& h, const SeqZm& raw, ValueMode mode) {
  const int m = h.modulus();
  SeqZm psi(m);
  for (int k = 1; k < m; ++k) {
    if (!h.contains(k)) continue;
    cplx v = 0.5 * (raw[k] + std::conj(raw[-k]));
    if (mode == ValueMode::Real) v = v.real();
    psi[k] = v;
  }
  psi[0] = 1.0;
  const SeqZm spectrum = dft_zm(psi);
  double mn = 0.0;
  for (int nu = 0; nu < m; ++nu) mn = std::min(mn, spectrum[nu].real());
  Repaired out;
  out.delta = static_cast<double>(m) * std::max(0.0, -mn);
  if (out.delta > 0.0) {
    for (int k = 1; k < m; ++k) psi[k] /= (1.0 + out.delta);
  }
  out.psi = std::move(psi);
  return out;
}

SolveReport trivial_report(int m, const char* formulation) {
  SolveReport rep;
  rep.value = rep.lower = rep.upper = 1.0;
  SeqZm one(std::vector<cplx>(static_cast<std::size_t>(m), cplx(1.0)));
  rep.certificate = is_pd_zm(one);
  rep.extremal = std::move(one);
  rep.meta.formulation = formulation;
  return rep;
}

void check_admissible(const SupportZm& h, const char* who) {
  if (h.modulus() < 2 || !h.admissible())
    throw std::invalid_argument(std::string(who) + ": support must contain 0 and ±1");
}

struct SignedSolve {
  double plus = 0.0;
  double minus = 0.0;
  std::vector<double> plus_point;
  std::vector<double> minus_point;
  int pivots = 0;
  Formulation formulation = Formulation::Fourier;
};

SignedSolve solve_signed(Program& p, Formulation f) {
  SignedSolve s;
  s.formulation = f;
  std::vector<double> obj = p.ell_re;
  const LpSolution up = run_objective(p, obj);
  for (double& v : obj) v = -v;
  const LpSolution down = run_objective(p, obj);
  s.plus = up.value;
  s.minus = down.value;
  s.plus_point = up.point;
  s.minus_point = down.point;
  s.pivots = up.pivots + down.pivots;
  return s;
}

SignedSolve signed_zm(const SupportZm& h, Formulation requested) {
  const int m = h.modulus();
  const UnitRoots w(m);
  const std::size_t hh = h.half().size();
  const std::size_t half = static_cast<std::size_t>(m / 2);
  const Formulation f = pick(requested, 1 + half - hh, hh);
  Program p = f == Formulation::Coefficient ? real_coeff_zm(h, w) : real_fourier_zm(h, w);
  return solve_signed(p, f);
}

// Directional oracle for |ℓ| maximization over a Program.
DirectionalOracle directional(Program& p) {
  return [&p](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (std::size_t j = 0; j < p.lp.cols(); ++j) p.lp.objective[j] = c * p.ell_re[j] + s * p.ell_im[j];
    const LpSolution sol = run(p);
    DirectionalResult r;
    r.status = sol.status;
    if (!sol.optimal()) return r;
    r.support = sol.value;
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < p.lp.cols(); ++j) {
      re += p.ell_re[j] * sol.point[j];
      im += p.ell_im[j] * sol.point[j];
    }
    r.functional = {re, im};
    r.point = sol.point;
    return r;
  };
}

}  // namespace

std::string to_string(ValueMode mode) { return mode == ValueMode::Real ? "real" : "complex"; }

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::Auto: return "auto";
    case Formulation::Fourier: return "fourier";
    case Formulation::Coefficient: return "coefficient";
  }
  return "unknown";
}

SignedOptima k_m_signed(const SupportZm& h, Formulation formulation) {
  check_admissible(h, "k_m");
  if (h.modulus() <= 3) return {1.0, h.modulus() == 2 ? 1.0 : 0.5};
  const SignedSolve s = signed_zm(h, formulation);
  return {s.plus, s.minus};
}

SolveReport k_m(const SupportZm& h, double tol, Formulation formulation) {
  check_admissible(h, "k_m");
  const int m = h.modulus();
  if (m <= 3) return trivial_report(m, "trivial");
  const auto start = Clock::now();
  const SignedSolve s = signed_zm(h, formulation);
  const bool use_plus = s.plus >= s.minus;
  const std::vector<double>& point = use_plus ? s.plus_point : s.minus_point;
  const SeqZm raw = s.formulation == Formulation::Coefficient
                        ? real_coeff_psi(h, point)
                        : real_fourier_psi(h, UnitRoots(m), point);
  Repaired rep = repair_zm(h, raw, ValueMode::Real);

  SolveReport out;
  out.value = std::max(s.plus, s.minus);
  out.upper = out.value;
  out.lower = std::min(out.value, std::abs(rep.psi[1]));
  out.certificate = is_pd_zm(rep.psi);
  out.extremal = std::move(rep.psi);
  out.meta.iterations = s.pivots;
  out.meta.lp_solves = 2;
  out.meta.formulation = to_string(s.formulation);
  out.meta.converged = out.upper - out.lower <= tol;
  out.meta.seconds = seconds_since(start);
  return out;
}

SolveReport cf_m(const SupportZm& h, double tol, Formulation formulation) {
  check_admissible(h, "cf_m");
  const int m = h.modulus();
  if (m <= 3) return trivial_report(m, "trivial");
  const auto start = Clock::now();
  const UnitRoots w(m);
  const auto excluded = excluded_half(h);
  std::size_t fourier_rows = 1, coeff_rows = 0;
  for (int k : excluded) fourier_rows += (2 * k == m) ? 1 : 2;
  for (int k : h.half()) coeff_rows += (2 * k == m) ? 1 : 2;
  const Formulation f = pick(formulation, fourier_rows, coeff_rows);
  Program p = f == Formulation::Coefficient ? complex_coeff_zm(h, w) : complex_fourier_zm(h, w);
  const ModulusResult mr = max_modulus(directional(p), 2.0 * std::numbers::pi / m);

  const SeqZm raw = f == Formulation::Coefficient ? complex_coeff_psi(h, mr.point)
                                                   : complex_fourier_psi(mr.point);
  Repaired rep = repair_zm(h, raw, ValueMode::Complex);

  SolveReport out;
  out.value = mr.value;
  out.upper = mr.upper_bound;
  out.lower = std::min(out.value, std::abs(rep.psi[1]));
  out.certificate = is_pd_zm(rep.psi);
  out.extremal = std::move(rep.psi);
  out.meta.iterations = mr.lp_solves;
  out.meta.lp_solves = mr.lp_solves;
  out.meta.formulation = to_string(f);
  out.meta.converged = out.upper - out.lower <= tol;
  out.meta.seconds = seconds_since(start);
  return out;
}

SolveReport solve_zm(const SupportZm& h, ValueMode mode, double tol, Formulation formulation) {
  return mode == ValueMode::Real ? k_m(h, tol, formulation) : cf_m(h, tol, formulation);
}

SupportZm dual_set_zm(const SupportZm& h) {
  check_admissible(h, "dual_set_zm");
  const int m = h.modulus();
  std::vector<int> res{0, 1, m - 1};
  for (int k = 0; k < m; ++k)
    if (!h.contains(k)) res.push_back(k);
  return SupportZm(m, res);
}

DualityReportZm verify_duality_zm(const SupportZm& h, double tol) {
  DualityReportZm rep;
  rep.set = h;
  rep.dual = dual_set_zm(h);
  const SignedOptima a = k_m_signed(rep.set);
  const SignedOptima b = k_m_signed(rep.dual);
  rep.k_set = std::max(a.plus, a.minus);
  rep.k_dual = std::max(b.plus, b.minus);
  rep.product = rep.k_set * rep.k_dual;
  rep.signed_product = a.plus * b.minus;
  rep.signed_product_reverse = a.minus * b.plus;
  rep.passed = std::abs(rep.product - 0.5) <= tol;
  return rep;
}

// ---- finite groups --------------------------------------------------------

namespace {

// ⟨η, x⟩ as a numerator over the lcm L of the moduli, from cached coordinates.
class Pairing {
 public:
  explicit Pairing(const FiniteAbelianGroup& g) : n_(g.order()), r_(g.moduli().size()) {
    for (int m : g.moduli()) lcm_ = std::lcm(lcm_, static_cast<long long>(m));
    for (int m : g.moduli()) scale_.push_back(lcm_ / m);
    moduli_ = g.moduli();
    coords_.resize(n_ * r_);
    for (std::size_t x = 0; x < n_; ++x) {
      const auto c = g.coords(x);
      std::copy(c.begin(), c.end(), coords_.begin() + static_cast<std::ptrdiff_t>(x * r_));
    }
  }
  long long lcm() const { return lcm_; }
  long long operator()(std::size_t eta, std::size_t x) const {
    long long num = 0;
    for (std::size_t i = 0; i < r_; ++i) {
      const long long p = static_cast<long long>(coords_[eta * r_ + i]) * coords_[x * r_ + i] % moduli_[i];
      num += p * scale_[i];
    }
    return num % lcm_;
  }

 private:
  std::size_t n_, r_;
  long long lcm_ = 1;
  std::vector<long long> scale_;
  std::vector<int> moduli_;
  std::vector<int> coords_;
};

struct GroupSetup {
  const FiniteAbelianGroup& g;
  Pairing pair;
  UnitRoots w;
  std::vector<bool> in_omega;
  std::vector<std::size_t> neg;
  /// Representatives x ≤ −x.
  std::vector<std::size_t> reps;

  GroupSetup(const FiniteAbelianGroup& group, const std::vector<std::size_t>& omega)
      : g(group), pair(group), w(pair.lcm()), in_omega(group.order(), false), neg(group.order()) {
    for (std::size_t x : omega) {
      if (x >= g.order()) throw std::invalid_argument("brute_group_oracle: element out of range");
      in_omega[x] = true;
    }
    for (std::size_t x = 0; x < g.order(); ++x) {
      neg[x] = g.negate(x);
      if (x <= neg[x]) reps.push_back(x);
    }
  }
  double cos(std::size_t eta, std::size_t x) const { return w.cos(pair(eta, x)); }
  double sin(std::size_t eta, std::size_t x) const { return w.sin(pair(eta, x)); }
};

Program real_fourier_group(const GroupSetup& s, std::size_t z) {
  std::vector<std::size_t> excluded;
  for (std::size_t x : s.reps)
    if (!s.in_omega[x]) excluded.push_back(x);
  Program p;
  p.name = "brute_group_oracle";
  p.lp = LinearProgram(1 + excluded.size(), s.reps.size());
  p.lp.rhs[0] = 1.0;
  std::fill(p.lp.row_kinds.begin(), p.lp.row_kinds.end(), RowKind::Equal);
  p.ell_re.resize(s.reps.size());
  p.ell_im.assign(s.reps.size(), 0.0);
  for (std::size_t j = 0; j < s.reps.size(); ++j) {
    const std::size_t eta = s.reps[j];
    const double weight = s.neg[eta] == eta ? 1.0 : 2.0;
    const auto col = static_cast<Eigen::Index>(j);
    p.lp.constraints(0, col) = weight;
    for (std::size_t r = 0; r < excluded.size(); ++r)
      p.lp.constraints(static_cast<Eigen::Index>(r + 1), col) = weight * s.cos(eta, excluded[r]);
    p.ell_re[j] = weight * s.cos(eta, z);
  }
  return p;
}

std::vector<cplx> real_fourier_f(const GroupSetup& s, const std::vector<double>& u) {
  std::vector<cplx> f(s.g.order());
  for (std::size_t x = 0; x < f.size(); ++x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.reps.size(); ++j) {
      const std::size_t eta = s.reps[j];
      const double weight = s.neg[eta] == eta ? 1.0 : 2.0;
      acc += weight * u[j] * s.cos(eta, x);
    }
    f[x] = acc;
  }
  return f;
}

std::vector<std::size_t> omega_reps(const GroupSetup& s) {
  std::vector<std::size_t> out;
  for (std::size_t x : s.reps)
    if (x != 0 && s.in_omega[x]) out.push_back(x);
  return out;
}

std::size_t position(const std::vector<std::size_t>& v, std::size_t x) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

Program real_coeff_group(const GroupSetup& s, std::size_t z) {
  const auto vars = omega_reps(s);
  Program p;
  p.name = "brute_group_oracle";
  p.via_dual = true;
  p.lp = LinearProgram(s.reps.size(), vars.size());
  std::fill(p.lp.free_variable.begin(), p.lp.free_variable.end(), true);
  std::fill(p.lp.rhs.begin(), p.lp.rhs.end(), 1.0);
  for (std::size_t i = 0; i < s.reps.size(); ++i)
    for (std::size_t j = 0; j < vars.size(); ++j) {
      const double c = s.neg[vars[j]] == vars[j] ? 1.0 : 2.0;
      p.lp.constraints(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          -c * s.cos(s.reps[i], vars[j]);
    }
  p.ell_re.assign(vars.size(), 0.0);
  p.ell_im.assign(vars.size(), 0.0);
  p.ell_re[position(vars, std::min(z, s.neg[z]))] = 1.0;
  return p;
}

std::vector<cplx> real_coeff_f(const GroupSetup& s, const std::vector<double>& a) {
  const auto vars = omega_reps(s);
  std::vector<cplx> f(s.g.order(), cplx(0.0));
  f[0] = 1.0;
  for (std::size_t j = 0; j < vars.size(); ++j) f[vars[j]] = f[s.neg[vars[j]]] = a[j];
  return f;
}

Program complex_fourier_group(const GroupSetup& s, std::size_t z) {
  std::vector<std::size_t> excluded;
  std::size_t rows = 1;
  for (std::size_t x : s.reps)
    if (!s.in_omega[x]) {
      excluded.push_back(x);
      rows += s.neg[x] == x ? 1 : 2;
    }
  const std::size_t n = s.g.order();
  Program p;
  p.name = "brute_group_oracle";
  p.lp = LinearProgram(rows, n);
  p.lp.rhs[0] = 1.0;
  std::fill(p.lp.row_kinds.begin(), p.lp.row_kinds.end(), RowKind::Equal);
  p.ell_re.resize(n);
  p.ell_im.resize(n);
  for (std::size_t eta = 0; eta < n; ++eta) {
    const auto col = static_cast<Eigen::Index>(eta);
    p.lp.constraints(0, col) = 1.0;
    Eigen::Index r = 1;
    for (std::size_t x : excluded) {
      p.lp.constraints(r++, col) = s.cos(eta, x);
      if (s.neg[x] != x) p.lp.constraints(r++, col) = s.sin(eta, x);
    }
    p.ell_re[eta] = s.cos(eta, z);
    p.ell_im[eta] = s.sin(eta, z);
  }
  return p;
}

std::vector<cplx> complex_fourier_f(const GroupSetup& s, const std::vector<double>& u) {
  const std::size_t n = s.g.order();
  std::vector<cplx> f(n);
  for (std::size_t x = 0; x < n; ++x) {
    cplx acc = 0.0;
    for (std::size_t eta = 0; eta < n; ++eta)
      if (u[eta] != 0.0) acc += u[eta] * cplx(s.cos(eta, x), s.sin(eta, x));
    f[x] = acc;
  }
  return f;
}

Program complex_coeff_group(const GroupSetup& s, std::size_t z) {
  const auto vars = omega_reps(s);
  std::size_t cols = 0;
  for (std::size_t x : vars) cols += s.neg[x] == x ? 1 : 2;
  const std::size_t n = s.g.order();
  Program p;
  p.name = "brute_group_oracle";
  p.via_dual = true;
  p.lp = LinearProgram(n, cols);
  std::fill(p.lp.free_variable.begin(), p.lp.free_variable.end(), true);
  std::fill(p.lp.rhs.begin(), p.lp.rhs.end(), 1.0);
  p.ell_re.assign(cols, 0.0);
  p.ell_im.assign(cols, 0.0);
  for (std::size_t eta = 0; eta < n; ++eta) {
    Eigen::Index c = 0;
    for (std::size_t x : vars) {
      const auto row = static_cast<Eigen::Index>(eta);
      if (s.neg[x] == x) {
        p.lp.constraints(row, c++) = -s.cos(eta, x);
      } else {
        p.lp.constraints(row, c++) = -2.0 * s.cos(eta, x);
        p.lp.constraints(row, c++) = -2.0 * s.sin(eta, x);
      }
    }
  }
  const std::size_t rep = std::min(z, s.neg[z]);
  std::size_t c = 0;
  for (std::size_t x : vars) {
    if (x == rep) {
      p.ell_re[c] = 1.0;
      if (s.neg[x] != x) p.ell_im[c + 1] = rep == z ? 1.0 : -1.0;
      break;
    }
    c += s.neg[x] == x ? 1 : 2;
  }
  return p;
}

std::vector<cplx> complex_coeff_f(const GroupSetup& s, const std::vector<double>& v) {
  const auto vars = omega_reps(s);
  std::vector<cplx> f(s.g.order(), cplx(0.0));
  f[0] = 1.0;
  std::size_t c = 0;
  for (std::size_t x : vars) {
    if (s.neg[x] == x) {
      f[x] = v[c++];
    } else {
      f[x] = cplx(v[c], v[c + 1]);
      f[s.neg[x]] = std::conj(f[x]);
      c += 2;
    }
  }
  return f;
}

GroupFunction repair_group(const GroupSetup& s, const std::vector<cplx>& raw, ValueMode mode,
                           double& delta) {
  const std::size_t n = s.g.order();
  GroupFunction f{s.g, std::vector<cplx>(n, cplx(0.0))};
  for (std::size_t x = 1; x < n; ++x) {
    if (!s.in_omega[x]) continue;
    cplx v = 0.5 * (raw[x] + std::conj(raw[s.neg[x]]));
    if (mode == ValueMode::Real) v = v.real();
    f.values[x] = v;
  }
  f.values[0] = 1.0;
  const auto spectrum = group_dft(s.g, f.values);
  double mn = 0.0;
  for (const cplx& v : spectrum) mn = std::min(mn, v.real());
  delta = static_cast<double>(n) * std::max(0.0, -mn);
  if (delta > 0.0)
    for (std::size_t x = 1; x < n; ++x) f.values[x] /= (1.0 + delta);
  return f;
}

}  // namespace

SolveReport brute_group_oracle(const FiniteAbelianGroup& g, const std::vector<std::size_t>& omega,
                               std::size_t z, ValueMode mode, double tol, Formulation formulation) {
  if (g.order() == 0 || g.order() > kOracleMaxOrder)
    throw std::invalid_argument("brute_group_oracle: group order exceeds the size cap");
  if (z >= g.order()) throw std::invalid_argument("brute_group_oracle: z out of range");
  const auto start = Clock::now();
  const GroupSetup s(g, omega);
  for (std::size_t x = 0; x < g.order(); ++x)
    if (s.in_omega[x] != s.in_omega[s.neg[x]])
      throw std::invalid_argument("brute_group_oracle: Omega is not symmetric");
  if (!s.in_omega[0] || !s.in_omega[z])
    throw std::invalid_argument("brute_group_oracle: Omega must contain 0 and ±z");

  SolveReport out;
  if (z == 0) {
    out.value = out.lower = out.upper = 1.0;
    GroupFunction one{g, std::vector<cplx>(g.order(), cplx(1.0))};
    out.certificate = is_pd_group(one);
    out.extremal = std::move(one);
    out.meta.formulation = "trivial";
    return out;
  }

  std::size_t excluded_rows = 1, omega_cols = 0;
  for (std::size_t x : s.reps) {
    const std::size_t width = (mode == ValueMode::Complex && s.neg[x] != x) ? 2 : 1;
    if (!s.in_omega[x]) excluded_rows += width;
    else if (x != 0) omega_cols += width;
  }
  const Formulation f = pick(formulation, excluded_rows, omega_cols);

  std::vector<cplx> raw;
  if (mode == ValueMode::Real) {
    Program p = f == Formulation::Coefficient ? real_coeff_group(s, z) : real_fourier_group(s, z);
    const SignedSolve ss = solve_signed(p, f);
    const auto& point = ss.plus >= ss.minus ? ss.plus_point : ss.minus_point;
    raw = f == Formulation::Coefficient ? real_coeff_f(s, point) : real_fourier_f(s, point);
    out.value = out.upper = std::max(ss.plus, ss.minus);
    out.meta.iterations = ss.pivots;
    out.meta.lp_solves = 2;
  } else {
    Program p = f == Formulation::Coefficient ? complex_coeff_group(s, z) : complex_fourier_group(s, z);
    const double order = static_cast<double>(g.element_order(z));
    const ModulusResult mr = max_modulus(directional(p), 2.0 * std::numbers::pi / order);
    raw = f == Formulation::Coefficient ? complex_coeff_f(s, mr.point) : complex_fourier_f(s, mr.point);
    out.value = mr.value;
    out.upper = mr.upper_bound;
    out.meta.iterations = out.meta.lp_solves = mr.lp_solves;
  }
  double delta = 0.0;
  GroupFunction fn = repair_group(s, raw, mode, delta);
  out.lower = std::min(out.value, std::abs(fn.values[z]));
  out.certificate = is_pd_group(fn);
  out.extremal = std::move(fn);
  out.meta.formulation = to_string(f);
  out.meta.converged = out.upper - out.lower <= tol;
  out.meta.seconds = seconds_since(start);
  return out;
}

}  // namespace cfx
