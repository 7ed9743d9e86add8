#pragma once

// Finitely supported sequences on Z and Z_m, their transforms, and the
// positive-definiteness tests (nonnegative trigonometric polynomial on Z,
// nonnegative DFT on Z_m).

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace cfx {

using cplx = std::complex<double>;

inline constexpr double kDropTol = 1e-14;
inline constexpr double kPdTol = 1e-8;

/// Symmetric finite subset of Z containing 0, stored by its positive half.
class SupportZ {
 public:
  SupportZ() = default;
  /// `half` must hold strictly positive integers; it is sorted and checked
  /// for duplicates. Throws std::invalid_argument otherwise.
  explicit SupportZ(std::vector<int> half);
  /// Accepts any listing of a symmetric set (e.g. {0, 1, -1, 5, -5}).
  static SupportZ from_elements(const std::vector<int>& elements);

  const std::vector<int>& half() const { return half_; }
  bool contains(int k) const;
  int max_element() const { return half_.empty() ? 0 : half_.back(); }
  bool admissible() const { return contains(1); }
  /// Sorted listing of the full symmetric set.
  std::vector<int> elements() const;

  friend bool operator==(const SupportZ&, const SupportZ&) = default;

 private:
  std::vector<int> half_;
};

/// Symmetric subset of Z_m containing 0.
class SupportZm {
 public:
  SupportZm() = default;
  /// Residues are reduced mod m; the set must contain 0 and be closed under
  /// negation. Throws std::invalid_argument otherwise.
  SupportZm(int modulus, const std::vector<int>& residues);

  int modulus() const { return modulus_; }
  const std::vector<int>& residues() const { return residues_; }
  bool contains(int k) const;
  bool admissible() const { return modulus_ >= 2 && contains(1); }
  bool is_full() const { return static_cast<int>(residues_.size()) == modulus_; }
  /// Residues in 1..floor(m/2); they determine the set.
  std::vector<int> half() const;

  friend bool operator==(const SupportZm&, const SupportZm&) = default;

 private:
  int modulus_ = 0;
  std::vector<int> residues_;
  std::vector<bool> member_;
};

/// Finitely supported complex sequence on Z.
class SeqZ {
 public:
  SeqZ() = default;
  SeqZ(std::initializer_list<std::pair<const int, cplx>> entries);
  explicit SeqZ(std::map<int, cplx> entries);

  cplx operator()(int k) const;
  void set(int k, cplx value);
  const std::map<int, cplx>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// max |k| over the support (0 for the empty sequence).
  int radius() const;
  double max_abs() const;

 private:
  std::map<int, cplx> entries_;
};

/// Complex function on Z_m, values indexed 0..m-1.
class SeqZm {
 public:
  SeqZm() = default;
  explicit SeqZm(int modulus);
  explicit SeqZm(std::vector<cplx> values);

  int modulus() const { return static_cast<int>(values_.size()); }
  cplx operator[](int k) const;
  cplx& operator[](int k);
  const std::vector<cplx>& values() const { return values_; }

 private:
  std::vector<cplx> values_;
};

struct PdCertificate {
  bool is_pd = false;
  /// Minimum of the trigonometric polynomial on [0,1) (Z) or of Re of the
  /// DFT (Z_m).
  double min_value = 0.0;
  /// t in [0,1) for Z, frequency index for Z_m.
  double min_location = 0.0;
  double tolerance = kPdTol;
  std::string reason;
};

SeqZ reverse_conjugate(const SeqZ& s);
SeqZm reverse_conjugate(const SeqZm& s);

SeqZ convolve(const SeqZ& a, const SeqZ& b);
/// Cyclic convolution; throws std::invalid_argument on modulus mismatch.
SeqZm convolve(const SeqZm& a, const SeqZm& b);

/// ŝ(ν) = (1/m) Σ_j s(j) e^{−2πijν/m}.
SeqZm dft_zm(const SeqZm& s);
/// Inverse of dft_zm: s(j) = Σ_ν ŝ(ν) e^{2πijν/m}.
SeqZm idft_zm(const SeqZm& spectrum);

/// Σ_k s(k) e^{2πikt}.
cplx trig_eval(const SeqZ& s, double t);

bool is_self_converse(const SeqZ& s, double tol);
bool is_self_converse(const SeqZm& s, double tol);

struct TrigPoint {
  double t = 0.0;
  double value = 0.0;
};

/// Global minimum of the real trigonometric polynomial of a self-converse
/// sequence, accurate to 1e-10. Throws std::invalid_argument otherwise.
TrigPoint min_trig(const SeqZ& s);

/// All polished local minima, ascending by value. Same precondition.
std::vector<TrigPoint> trig_local_minima(const SeqZ& s);

PdCertificate is_pd_z(const SeqZ& s, double tol = kPdTol);
PdCertificate is_pd_zm(const SeqZm& s, double tol = kPdTol);

/// Δ_N(n) = (1 − |n|/(2N+1))₊, the Fejér-kernel coefficients.
SeqZ triangle_sequence(int n);

/// Reduces k into [0, m).
inline int mod_floor(long long k, int m) {
  long long r = k % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace cfx
