#include "espent/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "espent/fermion.hpp"
#include "report_json.hpp"

namespace espent {

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    worst = std::max(worst, std::abs(a[k] - b[k]));
  }
  return worst;
}

std::string alpha_key(double alpha) {
  std::ostringstream os;
  os << alpha;
  return os.str();
}

}  // namespace

bool AnalysisReport::all_converged() const {
  if (!von_neumann_series.converged) return false;
  return std::all_of(s_r.begin(), s_r.end(), [](const auto& kv) { return kv.second.converged; });
}

AnalysisReport analyze(const PureBipartiteState& state, const AnalysisOptions& options) {
  options.series.validate();
  AnalysisReport report;
  report.n = state.n();
  report.d = state.d();
  report.renormalization_factor = state.renormalization_factor();

  const ReducedDensityMatrix rho = reduced_density_matrix(state, Side::M);
  const Spectrum spec = spectrum(rho);
  const std::size_t n = spec.size();
  report.spectrum = spec.values();

  const ESPVector esp = esp_from_spectrum(spec);
  report.esp = esp.values();
  report.esp_charpoly = esp_from_charpoly(rho).values();
  report.residuals.esp_spectrum_vs_charpoly = max_abs_diff(report.esp, report.esp_charpoly);

  if (n <= options.brute_force_max_n) {
    const ProjectedFamily family = projected_states(state, Side::M);
    double worst = 0.0;
    for (std::size_t r = 1; r <= n; ++r) {
      worst = std::max(worst, std::abs(volume_r_brute(family, r) - esp[r]));
    }
    report.residuals.esp_spectrum_vs_volume = worst;
  }

  {
    double worst = 0.0;
    bool any = false;
    std::size_t dim = 1;
    for (std::size_t r = 1; r <= std::min<std::size_t>(n, 6); ++r) {
      dim *= n;
      if (dim > options.antisym_max_dim) break;
      worst = std::max(worst, std::abs(antisym_weight(rho, r) - esp[r]));
      any = true;
    }
    if (any) report.residuals.esp_spectrum_vs_antisym = worst;
  }

  const std::size_t k_max = std::max<std::size_t>(options.k_max, 2);
  report.purities = purities_from_esp(esp, k_max).values();
  report.purities_recurrence = purities_recurrence(esp, k_max).values();
  report.residuals.purity_girard_newton_vs_recurrence =
      max_abs_diff(report.purities, report.purities_recurrence);
  {
    std::vector<double> direct(k_max, 0.0);
    for (std::size_t k = 1; k <= k_max; ++k) {
      for (double lambda : spec.values()) direct[k - 1] += std::pow(lambda, static_cast<double>(k));
    }
    report.residuals.purity_vs_direct = max_abs_diff(report.purities, direct);
  }

  report.linear = n >= 2 ? linear_entropy(esp) : 0.0;
  report.q_tilde = n >= 2 ? q_tilde(esp) : 0.0;
  for (double alpha : options.alphas) report.renyi[alpha] = renyi_entropy(spec, alpha);

  report.von_neumann_direct = von_neumann_direct(spec);
  report.von_neumann_series = von_neumann_series(esp, options.series);
  report.residuals.series_vs_direct =
      std::abs(report.von_neumann_series.value - report.von_neumann_direct);

  const std::size_t r_max = options.r_max == 0 ? std::min<std::size_t>(n, 4) : std::min(options.r_max, n);
  for (std::size_t r = 1; r <= r_max; ++r) report.s_r[r] = s_r_truncated(esp, r, options.series);
  const std::size_t weight = options.series.max_outer_terms + 1;
  if (report.s_r.count(n) == 0 && truncation_tuple_count(n, weight) <= options.literal_tuple_budget) {
    report.s_r[n] = s_r_truncated(esp, n, options.series);
  }
  if (auto it = report.s_r.find(n); it != report.s_r.end()) {
    report.residuals.s_n_vs_series = std::abs(it->second.value - report.von_neumann_series.value);
  }

  if (options.simulate_bunching) {
    const auto out = beamsplitter_transform(build_two_copy_state(state));
    BunchingReport b;
    b.p_bunch = bunching_probability(out);
    b.e2_residual = std::abs(b.p_bunch - (n >= 2 ? esp[2] : 0.0));
    report.bunching = b;
    report.residuals.bunching_vs_e2 = b.e2_residual;
  }
  return report;
}

namespace detail {

nlohmann::json report_json(const AnalysisReport& report) {
  using nlohmann::json;
  auto series_json = [](const SeriesResult& s) {
    return json{{"value", s.value}, {"terms_used", s.terms_used}, {"converged", s.converged}};
  };
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };

  std::vector<double> esp_display(report.esp.size());
  for (std::size_t k = 0; k < report.esp.size(); ++k) {
    esp_display[k] = std::abs(report.esp[k]) < ESPVector::kDisplayFloor ? 0.0 : report.esp[k];
  }
  std::vector<double> charpoly_display(report.esp_charpoly.size());
  for (std::size_t k = 0; k < report.esp_charpoly.size(); ++k) {
    const double e = report.esp_charpoly[k];
    charpoly_display[k] = std::abs(e) < ESPVector::kDisplayFloor ? 0.0 : e;
  }

  json renyi = json::object();
  for (const auto& [alpha, value] : report.renyi) renyi[alpha_key(alpha)] = value;
  json s_r = json::object();
  json convergence = json::object();
  convergence["von_neumann_series"] = {{"terms_used", report.von_neumann_series.terms_used},
                                       {"converged", report.von_neumann_series.converged}};
  for (const auto& [r, s] : report.s_r) {
    s_r[std::to_string(r)] = series_json(s);
    convergence["s_" + std::to_string(r)] = {{"terms_used", s.terms_used}, {"converged", s.converged}};
  }

  json bunching = nullptr;
  if (report.bunching) {
    bunching = {{"p_bunch", report.bunching->p_bunch}, {"e2_residual", report.bunching->e2_residual}};
  }
  const Residuals& res = report.residuals;
  return json{
      {"schema_version", kReportSchemaVersion},
      {"state", {{"n", report.n}, {"d", report.d}, {"renormalization_factor", report.renormalization_factor}}},
      {"spectrum", report.spectrum},
      {"esp", {{"from_spectrum", esp_display}, {"from_charpoly", charpoly_display}}},
      {"purities", {{"girard_newton", report.purities}, {"recurrence", report.purities_recurrence}}},
      {"entropies",
       {{"linear", report.linear},
        {"q_tilde", report.q_tilde},
        {"renyi", renyi},
        {"s_r", s_r},
        {"von_neumann_series", series_json(report.von_neumann_series)},
        {"von_neumann_direct", report.von_neumann_direct}}},
      {"bunching", bunching},
      {"convergence", convergence},
      {"residuals",
       {{"esp_spectrum_vs_charpoly", opt(res.esp_spectrum_vs_charpoly)},
        {"esp_spectrum_vs_volume", opt(res.esp_spectrum_vs_volume)},
        {"esp_spectrum_vs_antisym", opt(res.esp_spectrum_vs_antisym)},
        {"purity_girard_newton_vs_recurrence", opt(res.purity_girard_newton_vs_recurrence)},
        {"purity_vs_direct", opt(res.purity_vs_direct)},
        {"s_n_vs_series", opt(res.s_n_vs_series)},
        {"series_vs_direct", opt(res.series_vs_direct)},
        {"bunching_vs_e2", opt(res.bunching_vs_e2)}}},
  };
}

}  // namespace detail

std::string report_to_json(const AnalysisReport& report) {
  return detail::report_json(report).dump(2) + "\n";
}

std::string report_to_text(const AnalysisReport& report) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "state: n=" << report.n << " d=" << report.d;
  if (report.renormalization_factor != 1.0) os << " (renormalized by " << report.renormalization_factor << ")";
  os << "\n\nspectrum:";
  for (double v : report.spectrum) os << ' ' << v;
  os << "\n\nsquared volumes |v_r|^2 = e_r:\n";
  for (std::size_t k = 0; k < report.esp.size(); ++k) {
    const double e = std::abs(report.esp[k]) < ESPVector::kDisplayFloor ? 0.0 : report.esp[k];
    os << "  e_" << k + 1 << " = " << e << '\n';
  }
  os << "\npurities Tr(rho^k):\n";
  for (std::size_t k = 0; k < report.purities.size(); ++k) {
    os << "  p_" << k + 1 << " = " << report.purities[k] << '\n';
  }
  os << "\nentropies:\n";
  auto label = [&](const std::string& name) { os << "  " << std::left << std::setw(19) << name << std::right; };
  label("linear");
  os << report.linear << '\n';
  label("q_tilde");
  os << report.q_tilde << '\n';
  for (const auto& [alpha, value] : report.renyi) {
    label("renyi(" + alpha_key(alpha) + ")");
    os << value << '\n';
  }
  auto series_line = [&](const std::string& name, const SeriesResult& s) {
    label(name);
    os << s.value << "  (" << s.terms_used << " terms" << (s.converged ? "" : ", NOT converged") << ")\n";
  };
  for (const auto& [r, s] : report.s_r) series_line("S_" + std::to_string(r), s);
  series_line("von Neumann series", report.von_neumann_series);
  label("von Neumann direct");
  os << report.von_neumann_direct << '\n';
  if (report.bunching) {
    os << "\nfermion bunching probability " << report.bunching->p_bunch << " (|P - e_2| = "
       << report.bunching->e2_residual << ")\n";
  }
  os << "\nresiduals:\n" << std::setprecision(3) << std::scientific;
  auto line = [&](const char* name, const std::optional<double>& v) {
    os << "  " << std::left << std::setw(36) << name << std::right;
    if (v) {
      os << *v << '\n';
    } else {
      os << "skipped\n";
    }
  };
  const Residuals& r = report.residuals;
  line("esp spectrum vs charpoly", r.esp_spectrum_vs_charpoly);
  line("esp spectrum vs wedge volumes", r.esp_spectrum_vs_volume);
  line("esp spectrum vs antisymmetrizer", r.esp_spectrum_vs_antisym);
  line("purity Girard-Newton vs recurrence", r.purity_girard_newton_vs_recurrence);
  line("purity vs direct", r.purity_vs_direct);
  line("S_n vs von Neumann series", r.s_n_vs_series);
  line("von Neumann series vs direct", r.series_vs_direct);
  line("bunching vs e_2", r.bunching_vs_e2);
  return os.str();
}

}  // namespace espent
