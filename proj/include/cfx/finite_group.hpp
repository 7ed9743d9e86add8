#pragma once

// Finite abelian groups Z_{m_1} × … × Z_{m_r}, indexed in mixed radix
// (last factor fastest), with the character pairing and the product DFT.

#include <cstddef>
#include <span>
#include <vector>

#include "cfx/seq_core.hpp"

namespace cfx {

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  /// Every modulus must be ≥ 1; throws std::invalid_argument otherwise.
  explicit FiniteAbelianGroup(std::vector<int> moduli);

  std::size_t order() const { return order_; }
  const std::vector<int>& moduli() const { return moduli_; }

  std::size_t index(std::span<const long long> coords) const;
  std::vector<int> coords(std::size_t idx) const;

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;
  std::size_t multiple(long long k, std::size_t a) const;
  /// Least n ≥ 1 with n·a = 0, found by walking the multiples.
  std::size_t element_order(std::size_t a) const;

  /// ⟨η, x⟩ = Σ η_i x_i / m_i reduced to [0, 1), computed exactly over the
  /// lcm of the moduli before the final division.
  double pairing(std::size_t eta, std::size_t x) const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.moduli_ == b.moduli_;
  }

 private:
  std::vector<int> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 0;
  long long lcm_ = 1;
};

/// A complex function on a finite abelian group.
struct GroupFunction {
  FiniteAbelianGroup group;
  std::vector<cplx> values;
};

/// f̂(η) = (1/|G|) Σ_x f(x) e^{−2πi⟨η,x⟩}, computed factor by factor.
std::vector<cplx> group_dft(const FiniteAbelianGroup& g, const std::vector<cplx>& f);

/// Positive definiteness on G: the product DFT is real and ≥ −tol.
PdCertificate is_pd_group(const GroupFunction& f, double tol = kPdTol);

}  // namespace cfx
