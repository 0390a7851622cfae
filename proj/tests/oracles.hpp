#pragma once

// Independent reference computations used only by tests. None of these go
// through the library's ESP, purity or series code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace oracle {

// e_r by explicit enumeration of r-subsets.
inline double subset_esp(const std::vector<double>& lambda, std::size_t r) {
  const std::size_t n = lambda.size();
  if (r == 0) return 1.0;
  if (r > n) return 0.0;
  double total = 0.0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(r), true);
  do {
    double prod = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (pick[k]) prod *= lambda[k];
    }
    total += prod;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return total;
}

inline double power_sum(const std::vector<double>& lambda, std::size_t k) {
  double s = 0.0;
  for (double x : lambda) s += std::pow(x, static_cast<double>(k));
  return s;
}

inline double entropy(const std::vector<double>& lambda) {
  double s = 0.0;
  for (double x : lambda) {
    if (x > 0) s -= x * std::log(x);
  }
  return s;
}

// Squared singular values of psi, descending, padded with zeros to `size`.
inline std::vector<double> schmidt_spectrum(const Eigen::MatrixXcd& psi, std::size_t size) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(psi);
  std::vector<double> out(size, 0.0);
  const auto& s = svd.singularValues();
  for (Eigen::Index k = 0; k < s.size() && static_cast<std::size_t>(k) < size; ++k) out[k] = s(k) * s(k);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline Eigen::MatrixXcd gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = {g(gen), g(gen)};
  }
  return m;
}

inline Eigen::MatrixXcd random_unitary(std::size_t n, std::uint64_t seed) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian_matrix(n, n, seed));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

// Flat-Dirichlet probability vector with every entry >= floor.
inline std::vector<double> random_spectrum(std::size_t n, std::uint64_t seed, double floor = 0.0) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> v(n);
  double sum = 0.0;
  for (auto& x : v) {
    x = ex(gen);
    sum += x;
  }
  const double free_mass = 1.0 - floor * static_cast<double>(n);
  for (auto& x : v) x = floor + free_mass * x / sum;
  std::sort(v.begin(), v.end(), std::greater<>());
  double total = 0.0;
  for (double x : v) total += x;
  for (auto& x : v) x /= total;
  return v;
}

inline double binom(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

}  // namespace oracle
