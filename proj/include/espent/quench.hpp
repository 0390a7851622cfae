#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "espent/analysis.hpp"

namespace espent {

enum class QuenchModel {
  /// H = -J sum Z_i Z_{i+1} - h sum X_i, open chain, from |up ... up>.
  TransverseFieldIsing,
  /// H = J sum (X_i X_{i+1} + Y_i Y_{i+1} + delta Z_i Z_{i+1}), open chain,
  /// from the Neel state |up down up ...>.
  XXZ,
};

QuenchModel parse_quench_model(const std::string& name);
std::string to_string(QuenchModel model);

struct QuenchConfig {
  QuenchModel model = QuenchModel::TransverseFieldIsing;
  std::size_t length = 8;
  std::size_t cut = 4;  // sites 0 .. cut-1 form the measured subsystem
  double t_max = 3.0;
  std::size_t steps = 30;  // steps + 1 evenly spaced times from 0 to t_max
  double coupling = 1.0;   // J
  double field = 1.0;      // h, transverse-field Ising only
  double anisotropy = 0.5; // delta, XXZ only
  AnalysisOptions analysis{};
};

inline constexpr std::size_t kMaxChainLength = 12;

struct QuenchPoint {
  double time = 0.0;
  AnalysisReport report;
};

/// Dense exact evolution |psi(t)> = V exp(-i E t) V^T |psi_0> from one
/// eigendecomposition of H, analyzed at every time on the grid.
/// Throws TooLarge for length > 12 and InvalidCut unless 1 <= cut < length.
std::vector<QuenchPoint> quench_trajectory(const QuenchConfig& config);

/// Real symmetric Hamiltonian in the computational basis, site 0 being the
/// most significant bit.
Eigen::MatrixXd quench_hamiltonian(const QuenchConfig& config);

std::string trajectory_to_json(const QuenchConfig& config, const std::vector<QuenchPoint>& points);
std::string trajectory_to_table(const std::vector<QuenchPoint>& points);

}  // namespace espent
