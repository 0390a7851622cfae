#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace espent {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Which factor of the bipartition an operation refers to. `M` indexes the
/// rows of the amplitude matrix (dimension n), `R` the columns (dimension d).
enum class Side { M, R };

/// Normalized pure state sum_{j,i} psi(j,i) |j> (x) |i> stored as a dense
/// n x d amplitude matrix.
class PureBipartiteState {
 public:
  /// Tolerance on |sum |psi|^2 - 1| for a constructed state.
  static constexpr double kNormTolerance = 1e-10;

  std::size_t n() const noexcept { return static_cast<std::size_t>(amps_.rows()); }
  std::size_t d() const noexcept { return static_cast<std::size_t>(amps_.cols()); }
  const CMatrix& amplitudes() const noexcept { return amps_; }
  cplx operator()(std::size_t j, std::size_t i) const { return amps_(j, i); }

  /// Multiplicative factor applied to the raw amplitudes (1 when untouched).
  double renormalization_factor() const noexcept { return factor_; }

 private:
  friend PureBipartiteState validate_state(const CMatrix& raw, bool renormalize);
  PureBipartiteState(CMatrix amps, double factor) : amps_(std::move(amps)), factor_(factor) {}

  CMatrix amps_;
  double factor_ = 1.0;
};

/// Accepts a raw amplitude matrix as a state.
///
/// A squared norm within 1e-10 of one is kept bit-for-bit. Within 1e-6 the
/// matrix is rescaled silently; beyond that it is rescaled only when
/// `renormalize` is set and otherwise rejected with NormError. Empty input
/// raises DimensionMismatch and a squared norm below 1e-12 raises ZeroState.
PureBipartiteState validate_state(const CMatrix& raw, bool renormalize = false);

/// Unnormalized projected vectors, one per basis state of the chosen side.
using ProjectedFamily = std::vector<CVector>;

/// side=M: rows |j psi> = sum_i psi(j,i) |i>. side=R: columns |i psi>.
ProjectedFamily projected_states(const PureBipartiteState& state, Side side);

class ReducedDensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kPsdTolerance = 1e-10;

  /// Validates Hermiticity, unit trace and positive semidefiniteness.
  /// Throws NotDensityMatrix (shape, Hermiticity, trace) or IndefiniteMatrix.
  explicit ReducedDensityMatrix(CMatrix matrix);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const noexcept { return matrix_; }

 private:
  CMatrix matrix_;
};

/// rho_M(j1, j2) = sum_i psi(j1,i) conj(psi(j2,i)), i.e. psi psi^dagger.
/// rho_R(i1, i2) = sum_j psi(j,i1) conj(psi(j,i2)), i.e. psi^T conj(psi).
ReducedDensityMatrix reduced_density_matrix(const PureBipartiteState& state, Side side);

/// Gram matrix of a family with entry (a, b) = <v_b|v_a> = sum_k v_a[k] conj(v_b[k]).
///
/// This is the transpose of the textbook <v_a|v_b> ordering, chosen so that
/// gram_matrix(projected_states(s, M)) reproduces reduced_density_matrix(s, M)
/// entry for entry. Determinants of principal submatrices are unaffected by
/// the transpose.
CMatrix gram_matrix(const ProjectedFamily& family);

/// Eigenvalues of a reduced density matrix, sorted non-increasing, clamped and
/// renormalized to sum to one.
class Spectrum {
 public:
  static constexpr double kClampTolerance = 1e-10;
  static constexpr double kSumTolerance = 1e-10;

  /// Accepts eigenvalues in any order. Values in [-1e-10, 0) become 0 and the
  /// list is renormalized; anything more negative raises IndefiniteMatrix and
  /// a sum off by more than 1e-10 before renormalization raises NormError.
  static Spectrum from_values(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }

  /// Number of eigenvalues strictly above `threshold`.
  std::size_t rank(double threshold = 1e-12) const noexcept;

 private:
  explicit Spectrum(std::vector<double> v) : values_(std::move(v)) {}
  std::vector<double> values_;
};

Spectrum spectrum(const ReducedDensityMatrix& rho);

}  // namespace espent
