#include "cfx/instances.hpp"

#include <algorithm>
#include <set>

namespace cfx {
namespace {

cplx random_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace

SupportZm random_support_zm(Rng& rng, int m, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<int> residues{0, 1, -1};
  for (int k = 2; 2 * k <= m; ++k)
    if (keep(rng)) {
      residues.push_back(k);
      residues.push_back(-k);
    }
  return SupportZm(m, residues);
}

SupportZ random_support_z(Rng& rng, int n, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<int> half{1};
  for (int k = 2; k < n; ++k)
    if (keep(rng)) half.push_back(k);
  if (n > 1) half.push_back(n);
  return SupportZ(half);
}

SeqZ random_pd_z(Rng& rng, int n) {
  SeqZ theta;
  for (int k = 0; k <= n; ++k) theta.set(k, random_complex(rng));
  return convolve(theta, reverse_conjugate(theta));
}

SeqZm random_pd_zm(Rng& rng, int m) {
  SeqZm theta(m);
  for (int k = 0; k < m; ++k) theta[k] = random_complex(rng);
  return convolve(theta, reverse_conjugate(theta));
}

GroupInstance random_group_instance(Rng& rng, std::size_t max_order) {
  std::uniform_int_distribution<int> rank_dist(1, 3);
  const int rank = rank_dist(rng);
  std::vector<GroupFactor> factors;
  std::size_t order = 1;
  for (int i = 0; i < rank; ++i) {
    const int cap = static_cast<int>(std::min<std::size_t>(32, max_order / order));
    if (cap < 2) break;
    std::uniform_int_distribution<int> mod_dist(2, cap);
    const int m = mod_dist(rng);
    factors.push_back({FactorKind::Cyclic, m});
    order *= static_cast<std::size_t>(m);
  }
  GroupInstance inst;
  inst.group = GroupDescriptor(factors);
  const FiniteAbelianGroup fg = inst.group.finite();

  std::uniform_int_distribution<std::size_t> elem(1, fg.order() - 1);
  inst.z_index = elem(rng);
  std::uniform_real_distribution<double> density_dist(0.05, 0.5);
  std::bernoulli_distribution keep(density_dist(rng));
  std::set<std::size_t> members{0, inst.z_index, fg.negate(inst.z_index)};
  for (std::size_t x = 1; x < fg.order(); ++x) {
    const std::size_t nx = fg.negate(x);
    if (nx < x) continue;
    if (keep(rng)) {
      members.insert(x);
      members.insert(nx);
    }
  }
  inst.omega_indices.assign(members.begin(), members.end());

  auto element = [&](std::size_t idx) {
    std::vector<Rational> c;
    for (int v : fg.coords(idx)) c.emplace_back(v);
    return make_element(inst.group, std::move(c));
  };
  inst.z = element(inst.z_index);
  std::vector<GroupElement> pts;
  for (std::size_t x : inst.omega_indices) pts.push_back(element(x));
  inst.omega.points = std::move(pts);
  return inst;
}

}  // namespace cfx
