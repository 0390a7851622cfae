#pragma once

// Exact second-quantized model of the two-copy beamsplitter protocol: one
// fermion per copy, internal level j, entangled with its own environment.
// Creation operators are kept in the canonical order (port, level); every
// reordering picks up the anticommutation sign when a term is inserted.

#include <compare>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "espent/combinatorics.hpp"
#include "espent/state.hpp"

namespace espent {

/// Ports 1 and 2 feed the beamsplitter, ports 3 and 4 leave it.
enum class Port : int { In1 = 1, In2 = 2, Out3 = 3, Out4 = 4 };

struct FermionMode {
  Port port;
  std::size_t level;  // 0-based internal level

  auto operator<=>(const FermionMode&) const = default;
};

/// Two creation operators in canonical order (first < second). Equal modes
/// cannot be represented: b^dagger b^dagger = 0.
class ModePair {
 public:
  const FermionMode& first() const noexcept { return first_; }
  const FermionMode& second() const noexcept { return second_; }
  bool same_port() const noexcept { return first_.port == second_.port; }

  auto operator<=>(const ModePair&) const = default;

 private:
  friend class TwoFermionJointState;
  ModePair(FermionMode a, FermionMode b) : first_(a), second_(b) {}
  FermionMode first_;
  FermionMode second_;
};

/// sum over ordered mode pairs of c^dagger_a c^dagger_b |0> (x) |env>, with
/// env a vector in H_R (x) H_R of length d^2.
class TwoFermionJointState {
 public:
  explicit TwoFermionJointState(std::size_t env_dim) : env_dim_(env_dim) {}

  /// Adds c^dagger_a c^dagger_b |0> (x) env. Writes it as -c^dagger_b
  /// c^dagger_a when b precedes a, and drops it when a == b. Terms on the
  /// same pair are summed.
  void add(FermionMode a, FermionMode b, const CVector& env);

  const std::map<ModePair, CVector>& terms() const noexcept { return terms_; }
  std::size_t env_dim() const noexcept { return env_dim_; }
  double norm_squared() const;

 private:
  std::size_t env_dim_;
  std::map<ModePair, CVector> terms_;
};

/// sum_{j1, j2} a^dagger_{j1}(1) a^dagger_{j2}(2) |0,0> (x) |j1 psi> (x) |j2 psi>.
TwoFermionJointState build_two_copy_state(const PureBipartiteState& state);

/// 50:50 beamsplitter, level preserving:
///   a^dagger(1) -> (b^dagger(3) - b^dagger(4)) / sqrt 2,
///   a^dagger(2) -> (b^dagger(3) + b^dagger(4)) / sqrt 2.
/// Throws WrongPortDomain if any mode is already on an output port.
TwoFermionJointState beamsplitter_transform(const TwoFermionJointState& input);

/// Total weight of the terms with both fermions on the same output port.
/// Throws WrongPortDomain for input-port modes.
double bunching_probability(const TwoFermionJointState& output);

/// Antisymmetrizer P_A = (1/r!) sum_pi sign(pi) Pi_pi on (C^n)^{(x) r}, held
/// as its r! signed permutation operators.
///
/// This is the projector that an interferometer over r replicas encodes; the
/// network itself is not modelled, only Tr(P_A rho^{(x) r}).
class Antisymmetrizer {
 public:
  /// Throws OrderOutOfRange unless 1 <= r <= 6.
  Antisymmetrizer(std::size_t n, std::size_t r);

  std::size_t n() const noexcept { return n_; }
  std::size_t copies() const noexcept { return r_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Dense n^r x n^r matrix; meant for small checks.
  CMatrix matrix() const;

  /// Tr(P_A rho^{(x) r}) summed basis state by basis state.
  cplx trace_with_tensor_power(const CMatrix& rho) const;

 private:
  std::size_t n_;
  std::size_t r_;
  std::size_t dim_;
  std::vector<SignedPermutation> perms_;
};

/// Tr(P_A rho^{(x) r}), equal to e_r. Throws OrderOutOfRange unless 1 <= r <= 6.
double antisym_weight(const ReducedDensityMatrix& rho, std::size_t r);

}  // namespace espent
