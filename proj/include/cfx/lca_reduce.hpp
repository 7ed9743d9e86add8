#pragma once

// Pointwise extremal problems on concrete groups G = ∏ (Z | R | T | Z_m),
// reduced to the discrete problems on the trace set {k : kz ∈ Ω}. Finite
// order o(z) = m lands in Z_m, infinite order in Z. On finite G the discrete
// extremal sequence lifts back to an explicit positive definite function.
//
// Coordinates are exact rationals; Ω is a finite explicit set (finite G only)
// or a finite union of open boxes with rational endpoints.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "cfx/finite_group.hpp"
#include "cfx/report.hpp"
#include "cfx/seq_core.hpp"

namespace cfx {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q" or "p". Decimal and exponent forms are rejected: membership
/// of kz in Ω is only decidable from exact data.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

enum class FactorKind { Integers, Reals, Torus, Cyclic };

struct GroupFactor {
  FactorKind kind = FactorKind::Integers;
  /// Cyclic modulus, unused otherwise.
  int modulus = 0;

  friend bool operator==(const GroupFactor&, const GroupFactor&) = default;
};

class GroupDescriptor {
 public:
  GroupDescriptor() = default;
  /// At least one factor; cyclic moduli ≥ 2. Throws std::invalid_argument.
  explicit GroupDescriptor(std::vector<GroupFactor> factors);
  /// "Z4xZ2", "RxT", "Z" (integers), "R", "T", "Zm".
  static GroupDescriptor parse(const std::string& text);

  const std::vector<GroupFactor>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  bool is_finite() const;
  /// The same group as Z_{m_1} × … × Z_{m_r}; requires is_finite().
  FiniteAbelianGroup finite() const;
  std::string name() const;

 private:
  std::vector<GroupFactor> factors_;
};

/// A point of G. Torus coordinates live in [0,1), cyclic ones in [0,m),
/// integer ones have denominator 1.
struct GroupElement {
  std::vector<Rational> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Reduces periodic coordinates and checks integrality. Throws
/// std::invalid_argument on rank mismatch or a fractional Z/Z_m coordinate.
GroupElement make_element(const GroupDescriptor& g, std::vector<Rational> coords);
GroupElement parse_element(const GroupDescriptor& g, const std::string& text);
std::string format_element(const GroupElement& x);

GroupElement add(const GroupDescriptor& g, const GroupElement& a, const GroupElement& b);
GroupElement negate(const GroupDescriptor& g, const GroupElement& a);
GroupElement multiple(const GroupDescriptor& g, std::int64_t k, const GroupElement& a);
bool is_zero(const GroupElement& a);

/// Open interval; a missing end is infinite. On T and Z_m the interval is
/// taken mod the period.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

struct Box {
  std::vector<Interval> sides;
};

struct OmegaDescriptor {
  /// Finite groups only.
  std::optional<std::vector<GroupElement>> points;
  std::vector<Box> boxes;
};

bool contains(const GroupDescriptor& g, const OmegaDescriptor& omega, const GroupElement& x);

/// Throws std::invalid_argument unless Ω is well formed for G, symmetric and
/// contains 0. Symmetry of a box union is decided exactly on the cells cut
/// out by all endpoints and their negatives.
void validate_omega(const GroupDescriptor& g, const OmegaDescriptor& omega);

/// o(z); std::nullopt when z has infinite order.
std::optional<std::int64_t> order(const GroupDescriptor& g, const GroupElement& z);

inline constexpr std::int64_t kReduceMaxOrder = 1 << 16;
inline constexpr std::int64_t kReduceMaxBound = 4096;

struct ReducedProblem {
  std::optional<std::int64_t> order;
  std::variant<SupportZm, SupportZ> support;
  /// k ↦ kz for every listed k of the support (k ≥ 0).
  std::vector<std::pair<std::int64_t, GroupElement>> provenance;
  /// Enumeration bound K on |k| in the infinite-order case.
  std::int64_t bound = 0;
  /// The boxes prove that no |k| > K qualifies.
  bool exhausted = true;
  /// H was cut at a caller bound that the boxes do not certify.
  bool truncated = false;
};

/// H(Ω,z) or H_m(Ω,z). Throws std::invalid_argument when z ∉ Ω, when Ω is
/// unbounded along z and no bound is given, or when the order or bound
/// exceeds the enumeration caps.
ReducedProblem reduce(const GroupDescriptor& g, const OmegaDescriptor& omega, const GroupElement& z,
                      std::optional<std::int64_t> bound = std::nullopt);

struct GroupSolveReport {
  SolveReport report;
  ReducedProblem reduced;
};

/// Reduce, then dispatch: o(z) ≤ 2 gives 1, finite order to K_m / CF_m,
/// infinite order to CF on Z (one value for both modes).
GroupSolveReport solve_group(const GroupDescriptor& g, const OmegaDescriptor& omega,
                             const GroupElement& z, ValueMode mode, double tol = 1e-8,
                             std::optional<std::int64_t> bound = std::nullopt);

/// Raised when a lifted or restricted function fails a property the
/// reduction guarantees.
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// F(x) = Σ_k ψ(k)·[x = kz] on finite G, verified positive definite with
/// F(0) = 1, F(z) = ψ(1) and supp F ⊆ Ω. Throws TheoremViolation.
GroupFunction lift_witness(const SeqZm& psi, const GroupDescriptor& g, const GroupElement& z,
                           const OmegaDescriptor& omega, double tol = kPdTol);

/// ψ(k) = f(kz) on Z_{o(z)}. Throws std::invalid_argument when f is not
/// positive definite, TheoremViolation when the restriction is not.
SeqZm restrict(const GroupFunction& f, std::size_t z, double tol = kPdTol);

}  // namespace cfx
