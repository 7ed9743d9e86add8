#include "cfx/seq_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cfx/poly_roots.hpp"

namespace cfx {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap01(double t) {
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

// e^{−2πi j/m} for j = 0..m-1; indices are reduced mod m by the caller.
std::vector<cplx> twiddles(int m, double sign) {
  std::vector<cplx> w(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(j)] = std::polar(1.0, sign * kTwoPi * j / m);
  return w;
}

// T, T', T'' of a real trigonometric polynomial given by its coefficients
// on k ≥ 1 (T(t) = c0 + 2 Σ Re(c_k e^{2πikt})).
struct TrigDerivs {
  double value, d1, d2;
};

class RealTrig {
 public:
  explicit RealTrig(const SeqZ& s) {
    c0_ = s(0).real();
    radius_ = s.radius();
    coef_.assign(static_cast<std::size_t>(radius_) + 1, cplx(0.0));
    for (const auto& [k, v] : s.entries())
      if (k > 0) coef_[static_cast<std::size_t>(k)] = v;
  }

  int radius() const { return radius_; }

  double value(double t) const {
    const cplx w = std::polar(1.0, kTwoPi * t);
    cplx wk = 1.0;
    double acc = 0.0;
    for (int k = 1; k <= radius_; ++k) {
      wk *= w;
      if (k % 64 == 0) wk = std::polar(1.0, kTwoPi * wrap01(t * k));
      acc += (coef_[static_cast<std::size_t>(k)] * wk).real();
    }
    return c0_ + 2.0 * acc;
  }

  TrigDerivs derivs(double t) const {
    const cplx w = std::polar(1.0, kTwoPi * t);
    cplx wk = 1.0;
    double v = 0.0, d1 = 0.0, d2 = 0.0;
    for (int k = 1; k <= radius_; ++k) {
      wk *= w;
      if (k % 64 == 0) wk = std::polar(1.0, kTwoPi * wrap01(t * k));
      const cplx term = coef_[static_cast<std::size_t>(k)] * wk;
      const double kk = kTwoPi * k;
      v += term.real();
      d1 += -kk * term.imag();
      d2 += -kk * kk * term.real();
    }
    return {c0_ + 2.0 * v, 2.0 * d1, 2.0 * d2};
  }

 private:
  double c0_ = 0.0;
  int radius_ = 0;
  std::vector<cplx> coef_;
};

// Newton on T' from t0, kept inside [lo, hi]; golden section when Newton
// leaves the bracket or meets nonpositive curvature.
TrigPoint polish_minimum(const RealTrig& trig, double t0, double lo, double hi) {
  double t = t0;
  bool newton_ok = true;
  for (int it = 0; it < 60; ++it) {
    const TrigDerivs d = trig.derivs(t);
    if (!(d.d2 > 0.0)) {
      newton_ok = false;
      break;
    }
    const double step = d.d1 / d.d2;
    t -= step;
    if (t < lo || t > hi) {
      newton_ok = false;
      break;
    }
    if (std::abs(step) < 1e-15) break;
  }
  if (!newton_ok) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = trig.value(x1), f2 = trig.value(x2);
    while (b - a > 1e-13) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = trig.value(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = trig.value(x2);
      }
    }
    t = 0.5 * (a + b);
  }
  return {wrap01(t), trig.value(t)};
}

void require_self_converse(const SeqZ& s) {
  if (!is_self_converse(s, 1e-10 * (1.0 + s.max_abs())))
    throw std::invalid_argument("trigonometric minimum requires a self-converse sequence");
}

}  // namespace

// ---- supports ---------------------------------------------------------------

SupportZ::SupportZ(std::vector<int> half) : half_(std::move(half)) {
  std::sort(half_.begin(), half_.end());
  for (std::size_t i = 0; i < half_.size(); ++i) {
    if (half_[i] <= 0) throw std::invalid_argument("SupportZ: half-set entries must be positive");
    if (i > 0 && half_[i] == half_[i - 1])
      throw std::invalid_argument("SupportZ: duplicate entry " + std::to_string(half_[i]));
  }
}

SupportZ SupportZ::from_elements(const std::vector<int>& elements) {
  std::vector<int> pos, neg;
  bool zero = false;
  for (int k : elements) {
    if (k > 0) pos.push_back(k);
    else if (k < 0) neg.push_back(-k);
    else zero = true;
  }
  if (!zero) throw std::invalid_argument("support set must contain 0");
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  std::sort(neg.begin(), neg.end());
  neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
  if (pos != neg) throw std::invalid_argument("support set is not symmetric");
  return SupportZ(std::move(pos));
}

bool SupportZ::contains(int k) const {
  if (k == 0) return true;
  return std::binary_search(half_.begin(), half_.end(), std::abs(k));
}

std::vector<int> SupportZ::elements() const {
  std::vector<int> out;
  for (auto it = half_.rbegin(); it != half_.rend(); ++it) out.push_back(-*it);
  out.push_back(0);
  out.insert(out.end(), half_.begin(), half_.end());
  return out;
}

SupportZm::SupportZm(int modulus, const std::vector<int>& residues) : modulus_(modulus) {
  if (modulus < 1) throw std::invalid_argument("SupportZm: modulus must be positive");
  member_.assign(static_cast<std::size_t>(modulus), false);
  for (int r : residues) member_[static_cast<std::size_t>(mod_floor(r, modulus))] = true;
  if (!member_[0]) throw std::invalid_argument("SupportZm: set must contain 0");
  for (int r = 0; r < modulus; ++r) {
    if (!member_[static_cast<std::size_t>(r)]) continue;
    if (!member_[static_cast<std::size_t>(mod_floor(-r, modulus))])
      throw std::invalid_argument("SupportZm: set is not symmetric mod " + std::to_string(modulus));
    residues_.push_back(r);
  }
}

bool SupportZm::contains(int k) const {
  if (modulus_ == 0) return false;
  return member_[static_cast<std::size_t>(mod_floor(k, modulus_))];
}

std::vector<int> SupportZm::half() const {
  std::vector<int> out;
  for (int r : residues_)
    if (r >= 1 && 2 * r <= modulus_) out.push_back(r);
  return out;
}

// ---- sequences --------------------------------------------------------------

SeqZ::SeqZ(std::initializer_list<std::pair<const int, cplx>> entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

SeqZ::SeqZ(std::map<int, cplx> entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

cplx SeqZ::operator()(int k) const {
  const auto it = entries_.find(k);
  return it == entries_.end() ? cplx(0.0) : it->second;
}

void SeqZ::set(int k, cplx value) {
  if (std::abs(value) <= kDropTol) entries_.erase(k);
  else entries_[k] = value;
}

int SeqZ::radius() const {
  if (entries_.empty()) return 0;
  return std::max(std::abs(entries_.begin()->first), std::abs(entries_.rbegin()->first));
}

double SeqZ::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

SeqZm::SeqZm(int modulus) : values_(static_cast<std::size_t>(modulus), cplx(0.0)) {
  if (modulus < 1) throw std::invalid_argument("SeqZm: modulus must be positive");
}

SeqZm::SeqZm(std::vector<cplx> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("SeqZm: modulus must be positive");
}

cplx SeqZm::operator[](int k) const { return values_[static_cast<std::size_t>(mod_floor(k, modulus()))]; }
cplx& SeqZm::operator[](int k) { return values_[static_cast<std::size_t>(mod_floor(k, modulus()))]; }

// ---- algebra ----------------------------------------------------------------

SeqZ reverse_conjugate(const SeqZ& s) {
  SeqZ out;
  for (const auto& [k, v] : s.entries()) out.set(-k, std::conj(v));
  return out;
}

SeqZm reverse_conjugate(const SeqZm& s) {
  SeqZm out(s.modulus());
  for (int k = 0; k < s.modulus(); ++k) out[-k] = std::conj(s[k]);
  return out;
}

SeqZ convolve(const SeqZ& a, const SeqZ& b) {
  std::map<int, cplx> acc;
  for (const auto& [i, x] : a.entries())
    for (const auto& [j, y] : b.entries()) acc[i + j] += x * y;
  return SeqZ(std::move(acc));
}

SeqZm convolve(const SeqZm& a, const SeqZm& b) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument("convolve: modulus mismatch (" + std::to_string(a.modulus()) +
                                " vs " + std::to_string(b.modulus()) + ")");
  const int m = a.modulus();
  SeqZm out(m);
  for (int i = 0; i < m; ++i) {
    if (a[i] == cplx(0.0)) continue;
    for (int j = 0; j < m; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

SeqZm dft_zm(const SeqZm& s) {
  const int m = s.modulus();
  const auto w = twiddles(m, -1.0);
  SeqZm out(m);
  for (int nu = 0; nu < m; ++nu) {
    cplx acc = 0.0;
    for (int j = 0; j < m; ++j)
      acc += s[j] * w[static_cast<std::size_t>((static_cast<long long>(j) * nu) % m)];
    out[nu] = acc / static_cast<double>(m);
  }
  return out;
}

SeqZm idft_zm(const SeqZm& spectrum) {
  const int m = spectrum.modulus();
  const auto w = twiddles(m, 1.0);
  SeqZm out(m);
  for (int j = 0; j < m; ++j) {
    cplx acc = 0.0;
    for (int nu = 0; nu < m; ++nu)
      acc += spectrum[nu] * w[static_cast<std::size_t>((static_cast<long long>(j) * nu) % m)];
    out[j] = acc;
  }
  return out;
}

cplx trig_eval(const SeqZ& s, double t) {
  cplx acc = 0.0;
  for (const auto& [k, v] : s.entries()) acc += v * std::polar(1.0, kTwoPi * wrap01(t * k));
  return acc;
}

bool is_self_converse(const SeqZ& s, double tol) {
  for (const auto& [k, v] : s.entries())
    if (std::abs(v - std::conj(s(-k))) > tol) return false;
  return true;
}

bool is_self_converse(const SeqZm& s, double tol) {
  for (int k = 0; k < s.modulus(); ++k)
    if (std::abs(s[k] - std::conj(s[-k])) > tol) return false;
  return true;
}

std::vector<TrigPoint> trig_local_minima(const SeqZ& s) {
  require_self_converse(s);
  const RealTrig trig(s);
  const int n = trig.radius();
  if (n == 0) return {{0.0, s(0).real()}};

  std::vector<TrigPoint> candidates;

  // Coarse grid with polishing of every discrete local minimum.
  const int samples = 8 * (2 * n + 1);
  const double h = 1.0 / samples;
  std::vector<double> grid(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) grid[static_cast<std::size_t>(i)] = trig.value(i * h);
  for (int i = 0; i < samples; ++i) {
    const double prev = grid[static_cast<std::size_t>((i + samples - 1) % samples)];
    const double next = grid[static_cast<std::size_t>((i + 1) % samples)];
    const double cur = grid[static_cast<std::size_t>(i)];
    if (cur <= prev && cur <= next) candidates.push_back(polish_minimum(trig, i * h, (i - 1) * h, (i + 1) * h));
  }

  // Stationary points: unit-circle roots of Σ k ψ(k) w^{k+n}.
  std::vector<cplx> deriv(static_cast<std::size_t>(2 * n + 1), cplx(0.0));
  for (const auto& [k, v] : s.entries()) deriv[static_cast<std::size_t>(k + n)] = static_cast<double>(k) * v;
  try {
    for (const cplx& w : poly_roots(deriv, 1e-8)) {
      if (std::abs(std::abs(w) - 1.0) > 1e-3) continue;
      const double t = wrap01(std::arg(w) / kTwoPi);
      const TrigDerivs d = trig.derivs(t);
      if (d.d2 < 0.0) continue;
      candidates.push_back(polish_minimum(trig, t, t - h, t + h));
    }
  } catch (const RootFindingError&) {
    // The polished grid alone still brackets every minimum at resolution h.
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const TrigPoint& a, const TrigPoint& b) { return a.value < b.value; });
  std::vector<TrigPoint> unique;
  for (const TrigPoint& c : candidates) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const TrigPoint& u) {
      const double d = std::abs(u.t - c.t);
      return std::min(d, 1.0 - d) < 1e-9;
    });
    if (!dup) unique.push_back(c);
  }
  return unique;
}

TrigPoint min_trig(const SeqZ& s) { return trig_local_minima(s).front(); }

PdCertificate is_pd_z(const SeqZ& s, double tol) {
  PdCertificate cert;
  cert.tolerance = tol;
  const bool symmetric = is_self_converse(s, tol);
  SeqZ part = s;
  if (!symmetric) {
    std::map<int, cplx> sym;
    for (const auto& [k, v] : s.entries()) {
      sym[k] += 0.5 * v;
      sym[-k] += 0.5 * std::conj(v);
    }
    part = SeqZ(std::move(sym));
  }
  const TrigPoint mn = min_trig(part);
  cert.min_value = mn.value;
  cert.min_location = mn.t;
  if (!symmetric) {
    cert.is_pd = false;
    cert.reason = "not_self_converse";
  } else if (mn.value < -tol) {
    cert.is_pd = false;
    cert.reason = "negative_transform";
  } else {
    cert.is_pd = true;
    cert.reason = "ok";
  }
  return cert;
}

PdCertificate is_pd_zm(const SeqZm& s, double tol) {
  PdCertificate cert;
  cert.tolerance = tol;
  const SeqZm spectrum = dft_zm(s);
  double mn = spectrum[0].real();
  int where = 0;
  double max_imag = 0.0;
  for (int nu = 0; nu < spectrum.modulus(); ++nu) {
    if (spectrum[nu].real() < mn) {
      mn = spectrum[nu].real();
      where = nu;
    }
    max_imag = std::max(max_imag, std::abs(spectrum[nu].imag()));
  }
  cert.min_value = mn;
  cert.min_location = where;
  if (max_imag > tol) {
    cert.is_pd = false;
    cert.reason = "complex_spectrum";
  } else if (mn < -tol) {
    cert.is_pd = false;
    cert.reason = "negative_transform";
  } else {
    cert.is_pd = true;
    cert.reason = "ok";
  }
  return cert;
}

SeqZ triangle_sequence(int n) {
  if (n < 0) throw std::invalid_argument("triangle_sequence: N must be nonnegative");
  SeqZ out;
  const double width = 2.0 * n + 1.0;
  for (int k = -2 * n; k <= 2 * n; ++k) out.set(k, 1.0 - std::abs(k) / width);
  return out;
}

}  // namespace cfx
