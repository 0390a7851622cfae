#include "espent/fermion.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "espent/error.hpp"

namespace espent {

namespace {

constexpr std::size_t kMaxCopies = 6;

bool is_input(Port p) { return p == Port::In1 || p == Port::In2; }

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index x = 0; x < a.size(); ++x) out.segment(x * b.size(), b.size()) = a(x) * b;
  return out;
}

struct Branch {
  FermionMode mode;
  double amplitude;
};

std::array<Branch, 2> split(const FermionMode& in) {
  const double h = 1.0 / std::sqrt(2.0);
  if (in.port == Port::In1) {
    return {Branch{{Port::Out3, in.level}, h}, Branch{{Port::Out4, in.level}, -h}};
  }
  return {Branch{{Port::Out3, in.level}, h}, Branch{{Port::Out4, in.level}, h}};
}

}  // namespace

void TwoFermionJointState::add(FermionMode a, FermionMode b, const CVector& env) {
  if (static_cast<std::size_t>(env.size()) != env_dim_) {
    throw Error(ErrorCode::LengthMismatch, "environment vector has the wrong length");
  }
  if (a == b) return;
  const bool swapped = b < a;
  ModePair key = swapped ? ModePair(b, a) : ModePair(a, b);
  auto [it, inserted] = terms_.try_emplace(key, CVector::Zero(static_cast<Eigen::Index>(env_dim_)));
  if (swapped) {
    it->second -= env;
  } else {
    it->second += env;
  }
}

double TwoFermionJointState::norm_squared() const {
  double total = 0.0;
  for (const auto& [pair, env] : terms_) total += env.squaredNorm();
  return total;
}

TwoFermionJointState build_two_copy_state(const PureBipartiteState& state) {
  const ProjectedFamily family = projected_states(state, Side::M);
  const std::size_t n = state.n();
  TwoFermionJointState joint(state.d() * state.d());
  for (std::size_t j1 = 0; j1 < n; ++j1) {
    for (std::size_t j2 = 0; j2 < n; ++j2) {
      joint.add({Port::In1, j1}, {Port::In2, j2}, kron(family[j1], family[j2]));
    }
  }
  return joint;
}

TwoFermionJointState beamsplitter_transform(const TwoFermionJointState& input) {
  TwoFermionJointState out(input.env_dim());
  for (const auto& [pair, env] : input.terms()) {
    if (!is_input(pair.first().port) || !is_input(pair.second().port)) {
      throw Error(ErrorCode::WrongPortDomain, "beamsplitter expects modes on ports 1 and 2");
    }
    for (const Branch& x : split(pair.first())) {
      for (const Branch& y : split(pair.second())) {
        out.add(x.mode, y.mode, (x.amplitude * y.amplitude) * env);
      }
    }
  }
  return out;
}

double bunching_probability(const TwoFermionJointState& output) {
  double bunched = 0.0;
  for (const auto& [pair, env] : output.terms()) {
    if (is_input(pair.first().port) || is_input(pair.second().port)) {
      throw Error(ErrorCode::WrongPortDomain, "bunching is read on output ports 3 and 4");
    }
    if (pair.same_port()) bunched += env.squaredNorm();
  }
  return bunched;
}

Antisymmetrizer::Antisymmetrizer(std::size_t n, std::size_t r) : n_(n), r_(r), dim_(1) {
  if (r < 1 || r > kMaxCopies) {
    std::ostringstream os;
    os << "copy count " << r << " outside 1.." << kMaxCopies;
    throw Error(ErrorCode::OrderOutOfRange, os.str());
  }
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "need n >= 1");
  for (std::size_t c = 0; c < r; ++c) dim_ *= n;
  perms_ = signed_permutations(r);
}

namespace {

// Digits of a basis index of (C^n)^{(x) r}, most significant copy first.
void decode(std::size_t index, std::size_t n, std::vector<std::size_t>& digits) {
  for (std::size_t c = digits.size(); c-- > 0;) {
    digits[c] = index % n;
    index /= n;
  }
}

std::size_t encode(const std::vector<std::size_t>& digits, std::size_t n) {
  std::size_t index = 0;
  for (std::size_t d : digits) index = index * n + d;
  return index;
}

}  // namespace

// Pi_pi |i_1 .. i_r> = |i_{pi(1)} .. i_{pi(r)}>.
CMatrix Antisymmetrizer::matrix() const {
  const auto dim = static_cast<Eigen::Index>(dim_);
  CMatrix p = CMatrix::Zero(dim, dim);
  std::vector<std::size_t> in(r_), out(r_);
  double norm = 1.0;
  for (std::size_t k = 2; k <= r_; ++k) norm *= static_cast<double>(k);
  for (std::size_t col = 0; col < dim_; ++col) {
    decode(col, n_, in);
    for (const auto& [perm, sign] : perms_) {
      for (std::size_t c = 0; c < r_; ++c) out[c] = in[perm[c]];
      p(static_cast<Eigen::Index>(encode(out, n_)), static_cast<Eigen::Index>(col)) +=
          static_cast<double>(sign) / norm;
    }
  }
  return p;
}

cplx Antisymmetrizer::trace_with_tensor_power(const CMatrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != n_ || rho.rows() != rho.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "rho does not match the antisymmetrizer");
  }
  // Tr(Pi_pi rho^{(x) r}) = sum_I prod_c rho(I_{pi^-1(c)}, I_c). pi and pi^-1
  // share a sign and both appear in the sum, so pi is used in place of pi^-1.
  std::vector<std::size_t> idx(r_);
  double norm = 1.0;
  for (std::size_t k = 2; k <= r_; ++k) norm *= static_cast<double>(k);
  cplx total = 0.0;
  for (const auto& [perm, sign] : perms_) {
    cplx trace = 0.0;
    for (std::size_t basis = 0; basis < dim_; ++basis) {
      decode(basis, n_, idx);
      cplx prod = 1.0;
      for (std::size_t c = 0; c < r_; ++c) {
        prod *= rho(static_cast<Eigen::Index>(idx[perm[c]]), static_cast<Eigen::Index>(idx[c]));
      }
      trace += prod;
    }
    total += static_cast<double>(sign) * trace;
  }
  return total / norm;
}

double antisym_weight(const ReducedDensityMatrix& rho, std::size_t r) {
  Antisymmetrizer projector(rho.dim(), r);
  return projector.trace_with_tensor_power(rho.matrix()).real();
}

}  // namespace espent
