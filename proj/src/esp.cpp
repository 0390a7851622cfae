#include "espent/esp.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "espent/combinatorics.hpp"
#include "espent/error.hpp"

namespace espent {

double maclaurin_bound(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  return binomial(n, k) / std::pow(static_cast<double>(n), static_cast<double>(k));
}

ESPVector::ESPVector(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (n_ == 0) throw Error(ErrorCode::OrderOutOfRange, "ESP vector needs n >= 1");
  if (values_.empty() || values_.size() > n_) {
    throw Error(ErrorCode::OrderOutOfRange, "ESP vector must hold e_1 .. e_m with 1 <= m <= n");
  }
  if (std::abs(values_[0] - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "e_1 = " << values_[0] << " but the spectrum must be trace-normalized";
    throw Error(ErrorCode::NotDensityMatrix, os.str());
  }
  for (std::size_t k = 1; k <= values_.size(); ++k) {
    const double e = values_[k - 1];
    if (!std::isfinite(e) || e < -kSignTolerance || e > maclaurin_bound(n_, k) + kMaclaurinTolerance) {
      std::ostringstream os;
      os << "e_" << k << " = " << e << " violates 0 <= e_k <= C(n,k)/n^k";
      throw Error(ErrorCode::NotDensityMatrix, os.str());
    }
  }
}

double ESPVector::operator[](std::size_t k) const {
  if (k == 0) return 1.0;
  if (k > n_) return 0.0;
  if (k > values_.size()) {
    std::ostringstream os;
    os << "e_" << k << " requested but only e_1 .. e_" << values_.size() << " computed";
    throw Error(ErrorCode::OrderOutOfRange, os.str());
  }
  return values_[k - 1];
}

double ESPVector::display(std::size_t k) const {
  const double e = (*this)[k];
  return std::abs(e) < kDisplayFloor ? 0.0 : e;
}

double wedge_norm_squared(std::span<const CVector> vectors) {
  const std::size_t r = vectors.size();
  if (r == 0) return 1.0;
  const Eigen::Index len = vectors[0].size();
  for (const auto& v : vectors) {
    if (v.size() != len) throw Error(ErrorCode::LengthMismatch, "wedge factors differ in length");
  }
  if (static_cast<Eigen::Index>(r) > len) return 0.0;
  const auto rr = static_cast<Eigen::Index>(r);
  CMatrix g(rr, rr);
  for (Eigen::Index a = 0; a < rr; ++a) {
    for (Eigen::Index b = 0; b < rr; ++b) g(a, b) = vectors[a].dot(vectors[b]);
  }
  return Eigen::PartialPivLU<CMatrix>(g).determinant().real();
}

cplx wedge_pairing(std::span<const CVector> bras, std::span<const CVector> kets) {
  if (bras.size() != kets.size()) {
    throw Error(ErrorCode::LengthMismatch, "pairing needs as many kets as bras");
  }
  const std::size_t r = bras.size();
  for (std::size_t a = 0; a < r; ++a) {
    if (bras[a].size() != bras[0].size() || kets[a].size() != bras[0].size()) {
      throw Error(ErrorCode::LengthMismatch, "wedge factors differ in length");
    }
  }
  cplx total = 0.0;
  for (const auto& [perm, sign] : signed_permutations(r)) {
    cplx term = static_cast<double>(sign);
    for (std::size_t a = 0; a < r; ++a) term *= bras[perm[a]].dot(kets[a]);
    total += term;
  }
  return total;
}

double volume_r_brute(const ProjectedFamily& family, std::size_t r) {
  const std::size_t n = family.size();
  if (r < 1 || r > n) {
    std::ostringstream os;
    os << "order " << r << " outside 1.." << n;
    throw Error(ErrorCode::OrderOutOfRange, os.str());
  }
  std::vector<std::size_t> idx(r);
  for (std::size_t k = 0; k < r; ++k) idx[k] = k;
  std::vector<double> minors;
  minors.reserve(static_cast<std::size_t>(binomial(n, r)));
  std::vector<CVector> subset(r);
  do {
    for (std::size_t k = 0; k < r; ++k) subset[k] = family[idx[k]];
    minors.push_back(wedge_norm_squared(subset));
  } while (next_combination(idx, n));
  return pairwise_sum(minors);
}

ESPVector esp_from_spectrum(const Spectrum& spec, std::size_t up_to) {
  const std::size_t n = spec.size();
  if (up_to < 1 || up_to > n) {
    std::ostringstream os;
    os << "up_to " << up_to << " outside 1.." << n;
    throw Error(ErrorCode::OrderOutOfRange, os.str());
  }
  std::vector<double> e(up_to + 1, 0.0);
  e[0] = 1.0;
  // Spectrum is stored descending, which is the processing order we want.
  for (double lambda : spec.values()) {
    for (std::size_t k = up_to; k >= 1; --k) e[k] += lambda * e[k - 1];
  }
  e.erase(e.begin());
  return ESPVector(n, std::move(e));
}

ESPVector esp_from_charpoly(const ReducedDensityMatrix& rho) {
  const CMatrix& a = rho.matrix();
  const auto n = a.rows();
  // det(xI - A) = sum_k c_k x^k, c_n = 1;
  // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k.
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  c[n] = 1.0;
  CMatrix m = CMatrix::Zero(n, n);
  const CMatrix id = CMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = (a * m + c[n - k + 1] * id).eval();
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  std::vector<double> e(static_cast<std::size_t>(n));
  for (Eigen::Index k = 1; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    e[k - 1] = sign * c[n - k].real();
  }
  return ESPVector(static_cast<std::size_t>(n), std::move(e));
}

}  // namespace espent
