#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "espent/entropy.hpp"
#include "espent/esp.hpp"
#include "espent/state.hpp"

namespace espent {

inline constexpr int kReportSchemaVersion = 1;

struct AnalysisOptions {
  std::size_t r_max = 0;  // 0 selects min(n, 4)
  std::size_t k_max = 10;
  std::vector<double> alphas{2.0};
  SeriesControl series{};
  bool simulate_bunching = false;
  /// Cross-checks whose cost grows combinatorially are skipped past these.
  std::size_t brute_force_max_n = 12;
  std::size_t antisym_max_dim = 4096;  // n^r
  double literal_tuple_budget = 2e6;
};

struct BunchingReport {
  double p_bunch = 0.0;
  double e2_residual = 0.0;
};

/// Absolute cross-check residuals. Empty when the input is too large for
/// the corresponding oracle.
struct Residuals {
  std::optional<double> esp_spectrum_vs_charpoly;   // max_k |e_k difference|
  std::optional<double> esp_spectrum_vs_volume;     // max_r |e_r - |v_r|^2|
  std::optional<double> esp_spectrum_vs_antisym;    // max_r |e_r - Tr(P_A rho^r)|
  std::optional<double> purity_girard_newton_vs_recurrence;
  std::optional<double> purity_vs_direct;           // against sum lambda^k
  std::optional<double> s_n_vs_series;
  std::optional<double> series_vs_direct;
  std::optional<double> bunching_vs_e2;
};

struct AnalysisReport {
  std::size_t n = 0;
  std::size_t d = 0;
  double renormalization_factor = 1.0;
  std::vector<double> spectrum;
  std::vector<double> esp;               // e_1 .. e_n from the spectrum
  std::vector<double> esp_charpoly;      // e_1 .. e_n from det(xI - rho)
  std::vector<double> purities;          // Girard-Newton, p_1 .. p_K
  std::vector<double> purities_recurrence;
  double linear = 0.0;
  double q_tilde = 0.0;
  std::map<double, double> renyi;
  std::map<std::size_t, SeriesResult> s_r;
  SeriesResult von_neumann_series;
  double von_neumann_direct = 0.0;
  std::optional<BunchingReport> bunching;
  Residuals residuals;

  /// True when every truncated series in the report met its stopping rule.
  bool all_converged() const;
};

/// Runs every module on one state and cross-checks the independent routes.
AnalysisReport analyze(const PureBipartiteState& state, const AnalysisOptions& options = {});

/// Report as JSON text with a "schema_version" field; deterministic.
std::string report_to_json(const AnalysisReport& report);

/// Human-readable summary.
std::string report_to_text(const AnalysisReport& report);

}  // namespace espent
