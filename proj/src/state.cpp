#include "espent/state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "espent/error.hpp"

namespace espent {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NormError: return "NormError";
    case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorCode::IndefiniteMatrix: return "IndefiniteMatrix";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::InvalidControl: return "InvalidControl";
    case ErrorCode::WrongPortDomain: return "WrongPortDomain";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidCut: return "InvalidCut";
  }
  return "Unknown";
}

namespace {

constexpr double kZeroStateThreshold = 1e-12;
constexpr double kAcceptTolerance = 1e-6;

Spectrum sorted_clamped(std::vector<double> values, bool check_sum) {
  for (double& v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NotDensityMatrix, "non-finite eigenvalue");
    }
    if (v < -Spectrum::kClampTolerance) {
      std::ostringstream os;
      os << "eigenvalue " << v << " below -" << Spectrum::kClampTolerance;
      throw Error(ErrorCode::IndefiniteMatrix, os.str());
    }
    if (v < 0.0) v = 0.0;
  }
  double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (check_sum && std::abs(sum - 1.0) > Spectrum::kSumTolerance) {
    std::ostringstream os;
    os << "eigenvalues sum to " << sum;
    throw Error(ErrorCode::NormError, os.str());
  }
  if (sum <= 0.0) throw Error(ErrorCode::ZeroState, "spectrum sums to zero");
  for (double& v : values) v /= sum;
  std::sort(values.begin(), values.end(), std::greater<>());
  return Spectrum::from_values(std::move(values));
}

}  // namespace

PureBipartiteState validate_state(const CMatrix& raw, bool renormalize) {
  if (raw.rows() == 0 || raw.cols() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "amplitude matrix is empty");
  }
  if (!raw.allFinite()) throw Error(ErrorCode::ParseError, "non-finite amplitude");
  const double norm2 = raw.squaredNorm();
  if (norm2 < kZeroStateThreshold) {
    throw Error(ErrorCode::ZeroState, "squared norm below 1e-12");
  }
  const double deviation = std::abs(norm2 - 1.0);
  if (deviation <= PureBipartiteState::kNormTolerance) {
    return PureBipartiteState(raw, 1.0);
  }
  if (deviation > kAcceptTolerance && !renormalize) {
    std::ostringstream os;
    os << "squared norm " << norm2 << " is not within 1e-6 of 1";
    throw Error(ErrorCode::NormError, os.str());
  }
  const double factor = 1.0 / std::sqrt(norm2);
  return PureBipartiteState(raw * factor, factor);
}

ProjectedFamily projected_states(const PureBipartiteState& state, Side side) {
  const CMatrix& psi = state.amplitudes();
  ProjectedFamily family;
  if (side == Side::M) {
    family.reserve(state.n());
    for (Eigen::Index j = 0; j < psi.rows(); ++j) family.emplace_back(psi.row(j).transpose());
  } else {
    family.reserve(state.d());
    for (Eigen::Index i = 0; i < psi.cols(); ++i) family.emplace_back(psi.col(i));
  }
  return family;
}

ReducedDensityMatrix::ReducedDensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::NotDensityMatrix, "density matrix must be square and nonempty");
  }
  if (!matrix_.allFinite()) throw Error(ErrorCode::NotDensityMatrix, "non-finite entry");
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    std::ostringstream os;
    os << "not Hermitian (max deviation " << asym << ")";
    throw Error(ErrorCode::NotDensityMatrix, os.str());
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "trace " << tr << " differs from 1";
    throw Error(ErrorCode::NotDensityMatrix, os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest < -kPsdTolerance) {
    std::ostringstream os;
    os << "smallest eigenvalue " << smallest;
    throw Error(ErrorCode::IndefiniteMatrix, os.str());
  }
}

ReducedDensityMatrix reduced_density_matrix(const PureBipartiteState& state, Side side) {
  const CMatrix& psi = state.amplitudes();
  CMatrix rho = side == Side::M ? CMatrix(psi * psi.adjoint())
                                : CMatrix(psi.transpose() * psi.conjugate());
  // The products are Hermitian only up to rounding; symmetrize exactly.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return ReducedDensityMatrix(std::move(rho));
}

CMatrix gram_matrix(const ProjectedFamily& family) {
  const auto count = static_cast<Eigen::Index>(family.size());
  CMatrix g(count, count);
  for (Eigen::Index a = 0; a < count; ++a) {
    for (Eigen::Index b = 0; b < count; ++b) {
      if (family[b].size() != family[a].size()) {
        throw Error(ErrorCode::LengthMismatch, "family vectors differ in length");
      }
      // Eigen's dot() conjugates its left operand: v_b.dot(v_a) = <v_b|v_a>.
      g(a, b) = family[b].dot(family[a]);
    }
  }
  return g;
}

Spectrum Spectrum::from_values(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::DimensionMismatch, "empty spectrum");
  const bool sorted = std::is_sorted(values.begin(), values.end(), std::greater<>());
  const bool clean = std::all_of(values.begin(), values.end(),
                                 [](double v) { return std::isfinite(v) && v >= 0.0; });
  if (sorted && clean) {
    double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance) {
      std::ostringstream os;
      os << "eigenvalues sum to " << sum;
      throw Error(ErrorCode::NormError, os.str());
    }
    return Spectrum(std::move(values));
  }
  return sorted_clamped(std::move(values), true);
}

std::size_t Spectrum::rank(double threshold) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [&](double v) { return v > threshold; }));
}

Spectrum spectrum(const ReducedDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  // rho already passed the trace check; only clamp and renormalize here.
  return sorted_clamped(std::vector<double>(ev.data(), ev.data() + ev.size()), false);
}

}  // namespace espent
