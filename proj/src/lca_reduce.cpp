#include "cfx/lca_reduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "cfx/solver_z.hpp"
#include "cfx/solver_zm.hpp"

namespace cfx {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxSymmetryCells = 2'000'000;

std::int64_t floor_of(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

Rational reduce_mod(const Rational& x, std::int64_t period) {
  const Rational p(period);
  return x - Rational(floor_of(x / p)) * p;
}

bool periodic(const GroupFactor& f) {
  return f.kind == FactorKind::Torus || f.kind == FactorKind::Cyclic;
}

std::int64_t period_of(const GroupFactor& f) {
  return f.kind == FactorKind::Cyclic ? f.modulus : 1;
}

bool in_interval(const GroupFactor& f, const Interval& iv, const Rational& x) {
  if (!periodic(f)) return (!iv.lo || *iv.lo < x) && (!iv.hi || x < *iv.hi);
  if (!iv.lo || !iv.hi) return true;
  // Least translate x + n·p above lo, then compare with hi.
  const std::int64_t p = period_of(f);
  const Rational shift = Rational(floor_of((*iv.lo - x) / Rational(p)) + 1) * Rational(p);
  return x + shift < *iv.hi;
}

bool in_box(const GroupDescriptor& g, const Box& b, const GroupElement& x) {
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (!in_interval(g.factors()[i], b.sides[i], x.coords[i])) return false;
  return true;
}

/// Points meeting every cell of the line cut at `cuts` (and their integer
/// neighbours for lattice factors).
std::vector<Rational> representatives(const GroupFactor& f, std::vector<Rational> cuts) {
  std::vector<Rational> reps;
  if (f.kind == FactorKind::Integers || f.kind == FactorKind::Cyclic) {
    cuts.push_back(Rational(0));
    for (const Rational& c : cuts) {
      const std::int64_t fl = floor_of(c);
      for (std::int64_t d = -1; d <= 1; ++d) reps.push_back(Rational(fl + d));
    }
  } else if (f.kind == FactorKind::Reals) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.empty()) return {Rational(0)};
    reps = cuts;
    reps.push_back(cuts.front() - 1);
    reps.push_back(cuts.back() + 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) reps.push_back((cuts[i] + cuts[i + 1]) / 2);
  } else {
    for (Rational& c : cuts) c = reduce_mod(c, 1);
    cuts.push_back(Rational(0));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    reps = cuts;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) reps.push_back((cuts[i] + cuts[i + 1]) / 2);
    reps.push_back(reduce_mod((cuts.back() + cuts.front() + 1) / 2, 1));
  }
  for (Rational& r : reps)
    if (periodic(f)) r = reduce_mod(r, period_of(f));
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

void check_rank(const GroupDescriptor& g, const GroupElement& x, const char* who) {
  if (x.coords.size() != g.rank())
    throw std::invalid_argument(std::string(who) + ": element has " + std::to_string(x.coords.size()) +
                                " coordinates, group has rank " + std::to_string(g.rank()));
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (l > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("order: lcm overflows");
  return static_cast<std::int64_t>(l);
}

std::size_t index_of(const FiniteAbelianGroup& fg, const GroupElement& x) {
  std::vector<long long> c;
  for (const Rational& r : x.coords) c.push_back(r.numerator());
  return fg.index(c);
}

GroupElement element_at(const GroupDescriptor& g, const FiniteAbelianGroup& fg, std::size_t idx) {
  std::vector<Rational> c;
  for (int v : fg.coords(idx)) c.emplace_back(v);
  return make_element(g, std::move(c));
}

/// Membership with a lookup table for explicit sets.
class Membership {
 public:
  Membership(const GroupDescriptor& g, const OmegaDescriptor& omega) : g_(g), omega_(omega) {
    if (omega.points)
      for (const GroupElement& p : *omega.points) points_.insert(p.coords);
  }
  bool operator()(const GroupElement& x) const {
    if (omega_.points) return points_.count(x.coords) > 0;
    return contains(g_, omega_, x);
  }

 private:
  const GroupDescriptor& g_;
  const OmegaDescriptor& omega_;
  std::set<std::vector<Rational>> points_;
};

/// Bound on |k| with kz in the box, when the box confines k.
std::optional<std::int64_t> box_k_bound(const GroupDescriptor& g, const Box& b, const GroupElement& z) {
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const GroupFactor& f = g.factors()[i];
    const Rational& zi = z.coords[i];
    if (periodic(f) || zi.numerator() == 0) continue;
    std::optional<Rational> a, c;
    if (b.sides[i].lo) (zi.numerator() > 0 ? a : c) = *b.sides[i].lo / zi;
    if (b.sides[i].hi) (zi.numerator() > 0 ? c : a) = *b.sides[i].hi / zi;
    if (a && (!lo || *a > *lo)) lo = a;
    if (c && (!hi || *c < *hi)) hi = c;
  }
  if (!lo || !hi) return std::nullopt;
  const Rational far = std::max(boost::abs(*lo), boost::abs(*hi));
  return floor_of(far);
}

SolveReport unit_report(std::int64_t m) {
  SolveReport rep;
  rep.value = rep.lower = rep.upper = 1.0;
  SeqZm one(std::vector<cplx>(static_cast<std::size_t>(m), cplx(1.0)));
  rep.certificate = is_pd_zm(one);
  rep.extremal = std::move(one);
  rep.meta.formulation = "trivial";
  return rep;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern))
    throw std::invalid_argument("not an exact rational \"p/q\": \"" + text + "\"");
  try {
    const std::int64_t p = std::stoll(m[1].str());
    const std::int64_t q = m[2].matched ? std::stoll(m[2].str()) : 1;
    if (q == 0) throw std::invalid_argument("zero denominator in \"" + text + "\"");
    return Rational(p, q);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rational out of range: \"" + text + "\"");
  }
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

GroupDescriptor::GroupDescriptor(std::vector<GroupFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("group needs at least one factor");
  for (const GroupFactor& f : factors_)
    if (f.kind == FactorKind::Cyclic && f.modulus < 2)
      throw std::invalid_argument("cyclic modulus must be at least 2");
}

GroupDescriptor GroupDescriptor::parse(const std::string& text) {
  static const std::regex token(R"(\s*(Z|R|T)(\d*)\s*)");
  std::vector<GroupFactor> factors;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::smatch m;
    if (!std::regex_match(part, m, token))
      throw std::invalid_argument("bad group factor \"" + part + "\" in \"" + text + "\"");
    const std::string kind = m[1].str();
    const std::string digits = m[2].str();
    if (kind == "Z" && !digits.empty())
      factors.push_back({FactorKind::Cyclic, std::stoi(digits)});
    else if (!digits.empty())
      throw std::invalid_argument("only Z takes a modulus: \"" + part + "\"");
    else if (kind == "Z")
      factors.push_back({FactorKind::Integers, 0});
    else
      factors.push_back({kind == "R" ? FactorKind::Reals : FactorKind::Torus, 0});
  }
  return GroupDescriptor(std::move(factors));
}

bool GroupDescriptor::is_finite() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const GroupFactor& f) { return f.kind == FactorKind::Cyclic; });
}

FiniteAbelianGroup GroupDescriptor::finite() const {
  if (!is_finite()) throw std::invalid_argument("group " + name() + " is not finite");
  std::vector<int> moduli;
  for (const GroupFactor& f : factors_) moduli.push_back(f.modulus);
  return FiniteAbelianGroup(std::move(moduli));
}

std::string GroupDescriptor::name() const {
  std::string out;
  for (const GroupFactor& f : factors_) {
    if (!out.empty()) out += "x";
    switch (f.kind) {
      case FactorKind::Integers: out += "Z"; break;
      case FactorKind::Reals: out += "R"; break;
      case FactorKind::Torus: out += "T"; break;
      case FactorKind::Cyclic: out += "Z" + std::to_string(f.modulus); break;
    }
  }
  return out;
}

GroupElement make_element(const GroupDescriptor& g, std::vector<Rational> coords) {
  GroupElement x{std::move(coords)};
  check_rank(g, x, "make_element");
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const GroupFactor& f = g.factors()[i];
    Rational& c = x.coords[i];
    if ((f.kind == FactorKind::Integers || f.kind == FactorKind::Cyclic) && c.denominator() != 1)
      throw std::invalid_argument("coordinate " + format_rational(c) + " must be an integer on " +
                                  g.name());
    if (periodic(f)) c = reduce_mod(c, period_of(f));
  }
  return x;
}

GroupElement parse_element(const GroupDescriptor& g, const std::string& text) {
  std::vector<Rational> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) coords.push_back(parse_rational(part));
  return make_element(g, std::move(coords));
}

std::string format_element(const GroupElement& x) {
  std::string out;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (i) out += ",";
    out += format_rational(x.coords[i]);
  }
  return out;
}

GroupElement add(const GroupDescriptor& g, const GroupElement& a, const GroupElement& b) {
  check_rank(g, a, "add");
  check_rank(g, b, "add");
  std::vector<Rational> c(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) c[i] = a.coords[i] + b.coords[i];
  return make_element(g, std::move(c));
}

GroupElement negate(const GroupDescriptor& g, const GroupElement& a) {
  return multiple(g, -1, a);
}

GroupElement multiple(const GroupDescriptor& g, std::int64_t k, const GroupElement& a) {
  check_rank(g, a, "multiple");
  std::vector<Rational> c(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const GroupFactor& f = g.factors()[i];
    const Rational& x = a.coords[i];
    if (!periodic(f)) {
      c[i] = x * Rational(k);
      continue;
    }
    // k·p/q mod period, in 128-bit arithmetic.
    const __int128 q = x.denominator();
    const __int128 span = q * period_of(f);
    __int128 p = (static_cast<__int128>(k) % span) * x.numerator() % span;
    if (p < 0) p += span;
    c[i] = Rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
  }
  return make_element(g, std::move(c));
}

bool is_zero(const GroupElement& a) {
  return std::all_of(a.coords.begin(), a.coords.end(), [](const Rational& c) { return c.numerator() == 0; });
}

bool contains(const GroupDescriptor& g, const OmegaDescriptor& omega, const GroupElement& x) {
  check_rank(g, x, "contains");
  if (omega.points)
    return std::find(omega.points->begin(), omega.points->end(), x) != omega.points->end();
  return std::any_of(omega.boxes.begin(), omega.boxes.end(),
                     [&](const Box& b) { return in_box(g, b, x); });
}

void validate_omega(const GroupDescriptor& g, const OmegaDescriptor& omega) {
  if (omega.points && !omega.boxes.empty())
    throw std::invalid_argument("omega: give either explicit points or boxes, not both");
  if (omega.points) {
    if (!g.is_finite()) throw std::invalid_argument("omega: explicit sets need a finite group");
    std::set<std::vector<Rational>> seen;
    for (const GroupElement& p : *omega.points) {
      check_rank(g, p, "omega");
      if (make_element(g, p.coords) != p)
        throw std::invalid_argument("omega: point " + format_element(p) + " is not reduced");
      seen.insert(p.coords);
    }
    for (const GroupElement& p : *omega.points)
      if (!seen.count(negate(g, p).coords))
        throw std::invalid_argument("omega: not symmetric, missing -(" + format_element(p) + ")");
  } else {
    std::vector<std::vector<Rational>> cuts(g.rank());
    for (const Box& b : omega.boxes) {
      if (b.sides.size() != g.rank())
        throw std::invalid_argument("omega: box rank differs from group rank");
      for (std::size_t i = 0; i < g.rank(); ++i) {
        for (const auto& end : {b.sides[i].lo, b.sides[i].hi}) {
          if (!end) continue;
          cuts[i].push_back(*end);
          cuts[i].push_back(-*end);
        }
      }
    }
    // The union and its mirror image are constant on every cell, so
    // comparing them at one point per cell decides symmetry exactly.
    std::vector<std::vector<Rational>> reps(g.rank());
    std::size_t cells = 1;
    for (std::size_t i = 0; i < g.rank(); ++i) {
      reps[i] = representatives(g.factors()[i], cuts[i]);
      cells *= reps[i].size();
      if (cells > kMaxSymmetryCells)
        throw std::invalid_argument("omega: too many boxes to validate symmetry");
    }
    std::vector<std::size_t> pos(g.rank(), 0);
    for (std::size_t c = 0; c < cells; ++c) {
      std::vector<Rational> coords(g.rank());
      for (std::size_t i = 0; i < g.rank(); ++i) coords[i] = reps[i][pos[i]];
      const GroupElement x = make_element(g, std::move(coords));
      if (contains(g, omega, x) != contains(g, omega, negate(g, x)))
        throw std::invalid_argument("omega: not symmetric at " + format_element(x));
      for (std::size_t i = g.rank(); i-- > 0;) {
        if (++pos[i] < reps[i].size()) break;
        pos[i] = 0;
      }
    }
  }
  std::vector<Rational> zero(g.rank(), Rational(0));
  if (!contains(g, omega, GroupElement{zero})) throw std::invalid_argument("omega: must contain 0");
}

std::optional<std::int64_t> order(const GroupDescriptor& g, const GroupElement& z) {
  check_rank(g, z, "order");
  std::int64_t m = 1;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const GroupFactor& f = g.factors()[i];
    const Rational& c = z.coords[i];
    std::int64_t oi = 1;
    switch (f.kind) {
      case FactorKind::Integers:
      case FactorKind::Reals:
        if (c.numerator() != 0) return std::nullopt;
        break;
      case FactorKind::Torus: oi = c.denominator(); break;
      case FactorKind::Cyclic: oi = f.modulus / std::gcd<std::int64_t>(c.numerator(), f.modulus); break;
    }
    m = checked_lcm(m, oi);
  }
  return m;
}

ReducedProblem reduce(const GroupDescriptor& g, const OmegaDescriptor& omega, const GroupElement& z,
                      std::optional<std::int64_t> bound) {
  check_rank(g, z, "reduce");
  if (make_element(g, z.coords) != z) throw std::invalid_argument("reduce: z is not reduced");
  validate_omega(g, omega);
  const Membership in_omega(g, omega);
  if (!in_omega(z)) throw std::invalid_argument("reduce: z = (" + format_element(z) + ") is not in omega");

  ReducedProblem out;
  out.order = order(g, z);
  if (out.order) {
    const std::int64_t m = *out.order;
    if (m > kReduceMaxOrder)
      throw std::invalid_argument("reduce: o(z) = " + std::to_string(m) + " exceeds the cap " +
                                  std::to_string(kReduceMaxOrder));
    std::vector<int> residues;
    GroupElement kz = make_element(g, std::vector<Rational>(g.rank(), Rational(0)));
    for (std::int64_t k = 0; k < m; ++k) {
      if (in_omega(kz)) {
        residues.push_back(static_cast<int>(k));
        out.provenance.emplace_back(k, kz);
      }
      kz = add(g, kz, z);
    }
    out.support = SupportZm(static_cast<int>(m), residues);
    out.bound = m - 1;
    return out;
  }

  std::optional<std::int64_t> certified = 0;
  for (const Box& b : omega.boxes) {
    const auto kb = box_k_bound(g, b, z);
    if (!kb) {
      certified.reset();
      break;
    }
    certified = std::max(*certified, *kb);
  }
  if (bound && *bound < 1) throw std::invalid_argument("reduce: bound must be positive");
  if (certified && (!bound || *bound >= *certified)) {
    out.bound = *certified;
    out.exhausted = true;
  } else if (bound) {
    out.bound = *bound;
    out.exhausted = false;
    out.truncated = true;
  } else {
    throw std::invalid_argument("reduce: omega is unbounded along z; supply a bound");
  }
  if (out.bound > kReduceMaxBound)
    throw std::invalid_argument("reduce: bound " + std::to_string(out.bound) + " exceeds the cap " +
                                std::to_string(kReduceMaxBound));

  std::vector<int> half;
  out.provenance.emplace_back(0, make_element(g, std::vector<Rational>(g.rank(), Rational(0))));
  for (std::int64_t k = 1; k <= out.bound; ++k) {
    const GroupElement kz = multiple(g, k, z);
    if (!in_omega(kz)) continue;
    if (!in_omega(negate(g, kz)))
      throw std::logic_error("reduce: omega lost symmetry at k = " + std::to_string(k));
    half.push_back(static_cast<int>(k));
    out.provenance.emplace_back(k, kz);
  }
  out.support = SupportZ(half);
  return out;
}

GroupSolveReport solve_group(const GroupDescriptor& g, const OmegaDescriptor& omega,
                             const GroupElement& z, ValueMode mode, double tol,
                             std::optional<std::int64_t> bound) {
  GroupSolveReport out;
  const auto start = Clock::now();
  out.reduced = reduce(g, omega, z, bound);
  if (const auto* h = std::get_if<SupportZm>(&out.reduced.support)) {
    if (h->modulus() <= 2)
      out.report = unit_report(h->modulus());
    else
      out.report = mode == ValueMode::Complex ? cf_m(*h, tol) : k_m(*h, tol);
  } else {
    out.report = cf_z(std::get<SupportZ>(out.reduced.support), tol);
  }
  out.report.meta.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

GroupFunction lift_witness(const SeqZm& psi, const GroupDescriptor& g, const GroupElement& z,
                           const OmegaDescriptor& omega, double tol) {
  const FiniteAbelianGroup fg = g.finite();
  const auto m = order(g, z);
  if (!m || *m != psi.modulus())
    throw std::invalid_argument("lift_witness: sequence length must equal o(z)");
  const std::size_t zi = index_of(fg, z);
  GroupFunction f{fg, std::vector<cplx>(fg.order(), cplx(0.0))};
  for (int k = 0; k < psi.modulus(); ++k) f.values[fg.multiple(k, zi)] = psi[k];

  const PdCertificate cert = is_pd_group(f, tol);
  if (!cert.is_pd)
    throw TheoremViolation("lift_witness: lifted function is not positive definite (min " +
                           std::to_string(cert.min_value) + ", " + cert.reason + ")");
  if (std::abs(f.values[0] - cplx(1.0)) > tol)
    throw TheoremViolation("lift_witness: F(0) differs from 1");
  if (psi.modulus() > 1 && f.values[zi] != psi[1])
    throw TheoremViolation("lift_witness: F(z) differs from psi(1)");
  const Membership in_omega(g, omega);
  for (std::size_t x = 0; x < fg.order(); ++x)
    if (std::abs(f.values[x]) > kDropTol && !in_omega(element_at(g, fg, x)))
      throw TheoremViolation("lift_witness: support leaves omega at (" +
                             format_element(element_at(g, fg, x)) + ")");
  return f;
}

SeqZm restrict(const GroupFunction& f, std::size_t z, double tol) {
  const PdCertificate cert = is_pd_group(f, tol);
  if (!cert.is_pd) throw std::invalid_argument("restrict: input is not positive definite");
  const std::size_t m = f.group.element_order(z);
  SeqZm psi(static_cast<int>(m));
  for (std::size_t k = 0; k < m; ++k)
    psi[static_cast<int>(k)] = f.values[f.group.multiple(static_cast<long long>(k), z)];
  const PdCertificate rc = is_pd_zm(psi, tol);
  if (!rc.is_pd)
    throw TheoremViolation("restrict: restriction to <z> is not positive definite (min " +
                           std::to_string(rc.min_value) + ")");
  return psi;
}

}  // namespace cfx
