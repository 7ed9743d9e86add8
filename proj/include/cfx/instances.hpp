#pragma once

// Seeded random problem instances for the property suites and the
// oracle comparison. All draws come from one std::mt19937_64 stream.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cfx/lca_reduce.hpp"
#include "cfx/seq_core.hpp"

namespace cfx {

using Rng = std::mt19937_64;

/// Admissible H ⊆ Z_m: 0, ±1 and each further pair {±k} with probability p.
SupportZm random_support_zm(Rng& rng, int m, double p = 0.4);

/// Admissible H ⊆ [−n, n] with 1 ∈ H⁺ and max H⁺ = n.
SupportZ random_support_z(Rng& rng, int n, double p = 0.4);

/// θ ⋆ θ̃ for θ with random complex entries on [0, n].
SeqZ random_pd_z(Rng& rng, int n);
/// θ ⋆ θ̃ on Z_m for θ with random complex entries.
SeqZm random_pd_zm(Rng& rng, int m);

struct GroupInstance {
  GroupDescriptor group;
  OmegaDescriptor omega;
  GroupElement z;
  /// The same data as indices of the finite group.
  std::vector<std::size_t> omega_indices;
  std::size_t z_index = 0;
};

/// Product of one to three cyclic factors with order ≤ max_order, a random
/// z and a random symmetric explicit Ω ∋ 0, ±z.
GroupInstance random_group_instance(Rng& rng, std::size_t max_order = 1024);

}  // namespace cfx
