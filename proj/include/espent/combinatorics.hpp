#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace espent {

/// Advances `idx` (strictly increasing, values < n) to the next r-subset in
/// lexicographic order. Returns false after the last subset.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n);

/// Sign of a permutation of {0, ..., r-1}: +1 for even, -1 for odd.
int permutation_sign(std::span<const std::size_t> perm);

struct SignedPermutation {
  std::vector<std::size_t> perm;
  int sign;
};

/// All r! permutations of {0, ..., r-1} in lexicographic order, with signs.
std::vector<SignedPermutation> signed_permutations(std::size_t r);

/// Pairwise (tree) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

double binomial(std::size_t n, std::size_t k);

}  // namespace espent
