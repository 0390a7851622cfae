#pragma once

#include <cstddef>
#include <vector>

#include "espent/esp.hpp"
#include "espent/state.hpp"

namespace espent {

/// Power sums p_k = Tr(rho^k) for k = 1 .. K, indexed from 1.
class PuritySequence {
 public:
  static constexpr double kTolerance = 1e-9;

  /// Checks p_1 = 1, values in [0, 1] and non-increasing, all within 1e-9.
  explicit PuritySequence(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  /// k in 1 .. size().
  double operator[](std::size_t k) const { return values_.at(k - 1); }

 private:
  std::vector<double> values_;
};

/// Truncation policy for the outer sum over m in the entropy series.
struct SeriesControl {
  std::size_t max_outer_terms = 256;
  double rel_tol = 1e-10;
  std::size_t consecutive_small = 5;

  /// Throws InvalidControl unless max_outer_terms >= 1, 0 < rel_tol < 1 and
  /// consecutive_small >= 1.
  void validate() const;
};

struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  bool converged = false;
};

/// S_L = 1 - Tr(rho^2) = 2 e_2.
double linear_entropy(const ESPVector& esp);

/// Half the linear entropy: the sum of second principal minors, e_2.
double q_tilde(const ESPVector& esp);

/// H_alpha = ln(sum lambda^alpha) / (1 - alpha). Zero eigenvalues drop out.
/// Throws InvalidOrder for alpha <= 0 or alpha == 1.
double renyi_entropy(const Spectrum& spec, double alpha);

/// -sum lambda ln lambda with 0 ln 0 = 0.
double von_neumann_direct(const Spectrum& spec);

/// Girard-Newton: p_k = k (-1)^k sum' (sum_l p_l - 1)! prod_l (-e_l)^{p_l} / p_l!
/// over all partitions of k (multiplicities p_l, parts l <= min(k, n)).
/// Each partition's coefficient is an exact rational; the products with the
/// floating ESP monomials are Kahan-summed. Throws OrderOutOfRange for K < 1
/// or when an ESP of order <= min(n, K) is missing.
PuritySequence purities_from_esp(const ESPVector& esp, std::size_t max_order);

/// Newton's recurrence p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k.
PuritySequence purities_recurrence(const ESPVector& esp, std::size_t max_order);

/// von Neumann entropy from the full ESP vector through the expansion
///   S = sum_m (1/m) sum_{k=1}^{m+1} C(m, k-1) (-1)^{k-1} p_k,
/// which is the Girard-Newton partition sum regrouped by purity. Purities
/// and partial sums are carried at 128 + 2 * max_outer_terms bits. The outer
/// sum stops once |term_m| <= rel_tol * |partial sum| for consecutive_small
/// successive m; otherwise converged is false after max_outer_terms.
/// Throws OrderOutOfRange unless all e_1 .. e_n are present.
SeriesResult von_neumann_series(const ESPVector& esp, const SeriesControl& ctrl = {});

/// r-th order entanglement entropy S_r built from e_1 .. e_r only:
///
///   S_r = -sum_m 1/m sum_{(p_2..p_r)} (-1)^a prod_{l>=2} e_l^{p_l} / p_l!
///           sum_{k=w}^{m+1} k (-1)^k C(m, k-1) (k-1-a)! / (k-w)!
///
/// with w = sum_{l>=2} l p_l > 0 and a = sum_{l>=2} (l-1) p_l. The
/// multiplicity of the part 1 is not a free index: with e_1 = 1 it is fixed
/// to k - w and its factorial is the (k-w)! above.
///
/// Tuples are enumerated by recursive descent over l = r .. 2 in
/// lexicographic order, grouped by (w, q = w - a), and the factorial ratios
/// are exact integers. S_1 = 0 and S_n agrees with von_neumann_series at
/// every truncation depth. Throws OrderOutOfRange unless 1 <= r <= n and
/// e_1 .. e_r are present.
SeriesResult s_r_truncated(const ESPVector& esp, std::size_t r, const SeriesControl& ctrl = {});

/// Number of tuples (p_2, ..., p_r) with 0 < sum_l l p_l <= max_weight that
/// s_r_truncated enumerates; lets callers bound the cost up front.
double truncation_tuple_count(std::size_t r, std::size_t max_weight);

}  // namespace espent
