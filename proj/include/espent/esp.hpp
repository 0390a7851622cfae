#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "espent/state.hpp"

namespace espent {

/// Elementary symmetric polynomials e_1 ... e_m of an n-level spectrum, with
/// m = up_to() <= n. Indexing follows the math: esp[0] == 1, esp[k] == 0 for
/// k > n, and esp[k] for up_to() < k <= n throws OrderOutOfRange.
class ESPVector {
 public:
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kSignTolerance = 1e-10;
  static constexpr double kMaclaurinTolerance = 1e-10;
  /// Values below this are shown as 0 in reports; raw values are kept.
  static constexpr double kDisplayFloor = 1e-14;

  /// Checks e_1 = 1, e_k >= -1e-10 and e_k <= C(n,k)/n^k + 1e-10.
  /// `values` holds e_1 ... e_m. Throws OrderOutOfRange or NotDensityMatrix.
  ESPVector(std::size_t n, std::vector<double> values);

  std::size_t n() const noexcept { return n_; }
  std::size_t up_to() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator[](std::size_t k) const;
  bool has(std::size_t k) const noexcept { return k == 0 || k > n_ || k <= values_.size(); }

  /// e_k with sub-1e-14 magnitudes reported as exactly zero.
  double display(std::size_t k) const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

/// Maclaurin bound C(n,k)/n^k, attained by the uniform spectrum.
double maclaurin_bound(std::size_t n, std::size_t k);

/// Squared norm of the r-form v_1 ^ ... ^ v_r: the Gram determinant
/// det(<v_a|v_b>), evaluated by LU with partial pivoting. Exactly 0 when
/// r exceeds the vector length. Throws LengthMismatch.
double wedge_norm_squared(std::span<const CVector> vectors);

/// Pairing of the r-form built from `bras` with the product ket built from
/// `kets`: sum over permutations pi of sign(pi) prod_a <bra_pi(a)|ket_a>.
/// Expanded term by term (r! products); equals det(<bra_a|ket_b>). Swapping
/// two bras flips the sign.
cplx wedge_pairing(std::span<const CVector> bras, std::span<const CVector> kets);

/// Total squared r-th order volume: the sum of wedge_norm_squared over all
/// C(n, r) ordered subsets of the family, i.e. the sum of order-r principal
/// minors of the Gram matrix. Subsets are visited lexicographically and the
/// per-subset values reduced pairwise. Throws OrderOutOfRange unless
/// 1 <= r <= n.
double volume_r_brute(const ProjectedFamily& family, std::size_t r);

/// e_1 ... e_{up_to} by the one-pass recurrence e_k += lambda * e_{k-1}
/// (k descending) over eigenvalues in descending order. All summands are
/// nonnegative. Throws OrderOutOfRange unless 1 <= up_to <= n.
ESPVector esp_from_spectrum(const Spectrum& spec, std::size_t up_to);
inline ESPVector esp_from_spectrum(const Spectrum& spec) {
  return esp_from_spectrum(spec, spec.size());
}

/// All e_k read off det(xI - rho) = sum_k (-1)^k e_k x^{n-k}, with the
/// coefficients produced by the Faddeev-LeVerrier trace recursion.
ESPVector esp_from_charpoly(const ReducedDensityMatrix& rho);

}  // namespace espent
