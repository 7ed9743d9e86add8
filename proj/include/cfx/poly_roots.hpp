#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace cfx {

class RootFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All complex roots (with multiplicity) of Σ coeffs[i] w^i, by Aberth
/// simultaneous iteration. Leading zeros are trimmed; exact zero roots are
/// deflated. Each returned root satisfies |p(ρ)| ≤ tol · Σ|a_i||ρ|^i.
/// Throws RootFindingError when the iteration does not converge.
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs,
                                             double tol = 1e-10);

/// Horner evaluation of Σ coeffs[i] w^i.
std::complex<double> poly_eval(const std::vector<std::complex<double>>& coeffs,
                               std::complex<double> w);

}  // namespace cfx
