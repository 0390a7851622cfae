#include "espent/combinatorics.hpp"

#include <algorithm>
#include <numeric>

namespace espent {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t r = idx.size();
  if (r == 0) return false;
  std::size_t pos = r;
  while (pos > 0) {
    --pos;
    if (idx[pos] < n - r + pos) {
      ++idx[pos];
      for (std::size_t k = pos + 1; k < r; ++k) idx[k] = idx[k - 1] + 1;
      return true;
    }
  }
  return false;
}

int permutation_sign(std::span<const std::size_t> perm) {
  // Parity from cycle decomposition: each cycle of length L contributes L-1
  // transpositions.
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t k = start; !seen[k]; k = perm[k]) {
      seen[k] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

std::vector<SignedPermutation> signed_permutations(std::size_t r) {
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<SignedPermutation> out;
  do {
    out.push_back({perm, permutation_sign(perm)});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

}  // namespace espent
