#include "cfx/finite_group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace cfx {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw std::invalid_argument("FiniteAbelianGroup: no factors");
  order_ = 1;
  for (int m : moduli_) {
    if (m < 1) throw std::invalid_argument("FiniteAbelianGroup: moduli must be positive");
    order_ *= static_cast<std::size_t>(m);
    lcm_ = std::lcm(lcm_, static_cast<long long>(m));
  }
  strides_.assign(moduli_.size(), 1);
  for (std::size_t i = moduli_.size() - 1; i-- > 0;)
    strides_[i] = strides_[i + 1] * static_cast<std::size_t>(moduli_[i + 1]);
}

std::size_t FiniteAbelianGroup::index(std::span<const long long> coords) const {
  if (coords.size() != moduli_.size())
    throw std::invalid_argument("FiniteAbelianGroup: coordinate count mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    idx += strides_[i] * static_cast<std::size_t>(mod_floor(coords[i], moduli_[i]));
  return idx;
}

std::vector<int> FiniteAbelianGroup::coords(std::size_t idx) const {
  std::vector<int> c(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    c[i] = static_cast<int>(idx / strides_[i]);
    idx %= strides_[i];
  }
  return c;
}

std::size_t FiniteAbelianGroup::add(std::size_t a, std::size_t b) const {
  const auto ca = coords(a), cb = coords(b);
  std::vector<long long> s(ca.size());
  for (std::size_t i = 0; i < ca.size(); ++i) s[i] = static_cast<long long>(ca[i]) + cb[i];
  return index(s);
}

std::size_t FiniteAbelianGroup::negate(std::size_t a) const {
  const auto ca = coords(a);
  std::vector<long long> s(ca.size());
  for (std::size_t i = 0; i < ca.size(); ++i) s[i] = -static_cast<long long>(ca[i]);
  return index(s);
}

std::size_t FiniteAbelianGroup::multiple(long long k, std::size_t a) const {
  const auto ca = coords(a);
  std::vector<long long> s(ca.size());
  for (std::size_t i = 0; i < ca.size(); ++i) s[i] = (k % moduli_[i]) * ca[i];
  return index(s);
}

std::size_t FiniteAbelianGroup::element_order(std::size_t a) const {
  std::size_t n = 1;
  std::size_t x = a;
  while (x != 0) {
    x = add(x, a);
    ++n;
  }
  return n;
}

double FiniteAbelianGroup::pairing(std::size_t eta, std::size_t x) const {
  const auto ce = coords(eta), cx = coords(x);
  long long num = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const long long m = moduli_[i];
    const long long prod = (static_cast<long long>(ce[i]) * cx[i]) % m;
    num = (num + prod * (lcm_ / m)) % lcm_;
  }
  return static_cast<double>(num) / static_cast<double>(lcm_);
}

std::vector<cplx> group_dft(const FiniteAbelianGroup& g, const std::vector<cplx>& f) {
  if (f.size() != g.order()) throw std::invalid_argument("group_dft: size mismatch");
  std::vector<cplx> cur = f;
  std::size_t stride = g.order();
  for (int m : g.moduli()) {
    const std::size_t block = stride;
    stride /= static_cast<std::size_t>(m);
    std::vector<cplx> w(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(j)] = std::polar(1.0, -2.0 * std::numbers::pi * j / m);
    std::vector<cplx> next(cur.size(), cplx(0.0));
    for (std::size_t base = 0; base < cur.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (int nu = 0; nu < m; ++nu) {
          cplx acc = 0.0;
          for (int j = 0; j < m; ++j)
            acc += cur[base + static_cast<std::size_t>(j) * stride + off] *
                   w[static_cast<std::size_t>((j * nu) % m)];
          next[base + static_cast<std::size_t>(nu) * stride + off] = acc / static_cast<double>(m);
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

PdCertificate is_pd_group(const GroupFunction& f, double tol) {
  PdCertificate cert;
  cert.tolerance = tol;
  const auto spectrum = group_dft(f.group, f.values);
  double mn = spectrum[0].real();
  std::size_t where = 0;
  double max_imag = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    if (spectrum[i].real() < mn) {
      mn = spectrum[i].real();
      where = i;
    }
    max_imag = std::max(max_imag, std::abs(spectrum[i].imag()));
  }
  cert.min_value = mn;
  cert.min_location = static_cast<double>(where);
  if (max_imag > tol) {
    cert.reason = "complex_spectrum";
  } else if (mn < -tol) {
    cert.reason = "negative_transform";
  } else {
    cert.is_pd = true;
    cert.reason = "ok";
  }
  return cert;
}

}  // namespace cfx
