#include <cmath>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "espent/analysis.hpp"
#include "espent/error.hpp"
#include "espent/io.hpp"
#include "espent/quench.hpp"

using namespace espent;

namespace {

PureBipartiteState bell() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = m(1, 1) = 1.0 / std::sqrt(2.0);
  return validate_state(m);
}

void check_residuals(const Residuals& r, double tol) {
  for (const auto& v : {r.esp_spectrum_vs_charpoly, r.esp_spectrum_vs_volume, r.esp_spectrum_vs_antisym,
                        r.purity_girard_newton_vs_recurrence, r.purity_vs_direct, r.bunching_vs_e2}) {
    if (v) CHECK(*v < tol);
  }
}

AnalysisOptions with_bunching() {
  AnalysisOptions o;
  o.simulate_bunching = true;
  o.series.max_outer_terms = 300;
  o.series.rel_tol = 1e-9;
  return o;
}

}  // namespace

TEST_CASE("analyze on the Bell state") {
  const auto rep = analyze(bell(), with_bunching());
  CHECK(rep.esp.at(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(rep.linear == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rep.von_neumann_direct == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(rep.von_neumann_series.value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  REQUIRE(rep.bunching);
  CHECK(rep.bunching->p_bunch == doctest::Approx(0.25).epsilon(1e-14));
  REQUIRE(rep.residuals.esp_spectrum_vs_volume);
  REQUIRE(rep.residuals.esp_spectrum_vs_antisym);
  check_residuals(rep.residuals, 1e-10);
  CHECK(rep.all_converged());
}

TEST_CASE("analyze on a product state") {
  CVector a(3), b(4);
  a << 0.6, 0.0, 0.8;
  b << 0.5, -0.5, cplx(0.0, 0.5), 0.5;
  const auto rep = analyze(validate_state(CMatrix(a * b.transpose())), with_bunching());
  for (std::size_t k = 1; k < rep.esp.size(); ++k) CHECK(std::abs(rep.esp[k]) < 1e-14);
  CHECK(std::abs(rep.linear) < 1e-14);
  CHECK(std::abs(rep.q_tilde) < 1e-14);
  CHECK(std::abs(rep.von_neumann_direct) < 1e-12);
  CHECK(std::abs(rep.von_neumann_series.value) < 1e-12);
  for (const auto& [r, s] : rep.s_r) CHECK(std::abs(s.value) < 1e-12);
  for (const auto& [alpha, h] : rep.renyi) CHECK(std::abs(h) < 1e-12);
  REQUIRE(rep.bunching);
  CHECK(std::abs(rep.bunching->p_bunch) < 1e-12);
}

TEST_CASE("analyze on a random 6x6 state keeps every residual small") {
  auto opts = with_bunching();
  opts.series.max_outer_terms = 512;
  opts.series.rel_tol = 1e-8;
  const auto rep = analyze(random_haar_state(6, 6, 2024), opts);
  CHECK(rep.residuals.esp_spectrum_vs_charpoly);
  CHECK(rep.residuals.esp_spectrum_vs_volume);
  CHECK(rep.residuals.purity_vs_direct);
  check_residuals(rep.residuals, 1e-8);
  CHECK(rep.s_r.size() == 4);  // r = 1 .. min(n, 4); S_6 exceeds the tuple budget at 512 terms
  CHECK(rep.s_r.count(6) == 0);
}

TEST_CASE("report JSON is deterministic and versioned") {
  const auto s = random_haar_state(3, 4, 1);
  const auto a = report_to_json(analyze(s));
  const auto b = report_to_json(analyze(s));
  CHECK(a == b);
  const auto doc = nlohmann::json::parse(a);
  CHECK(doc.at("schema_version") == kReportSchemaVersion);
  CHECK(doc.at("state").at("n") == 3);
  CHECK(doc.at("esp").at("from_spectrum").size() == 3);
  CHECK(doc.contains("residuals"));
  CHECK_FALSE(report_to_text(analyze(s)).empty());
}

TEST_CASE("quench from a product state starts unentangled") {
  QuenchConfig cfg;
  cfg.length = 6;
  cfg.cut = 3;
  cfg.steps = 4;
  cfg.t_max = 1.0;
  cfg.analysis.series.max_outer_terms = 128;
  const auto pts = quench_trajectory(cfg);
  REQUIRE(pts.size() == 5);
  CHECK(pts[0].time == 0.0);
  CHECK(std::abs(pts[0].report.von_neumann_direct) < 1e-12);
  CHECK(std::abs(pts[0].report.linear) < 1e-12);
  for (const auto& [r, s] : pts[0].report.s_r) CHECK(std::abs(s.value) < 1e-12);
  CHECK(pts.back().report.von_neumann_direct > 1e-3);
}

TEST_CASE("H = 0 keeps every entropy constant") {
  for (auto model : {QuenchModel::TransverseFieldIsing, QuenchModel::XXZ}) {
    QuenchConfig cfg;
    cfg.model = model;
    cfg.length = 6;
    cfg.cut = 2;
    cfg.steps = 3;
    cfg.coupling = 0.0;
    cfg.field = 0.0;
    cfg.analysis.series.max_outer_terms = 64;
    CHECK(quench_hamiltonian(cfg).norm() == 0.0);
    const auto pts = quench_trajectory(cfg);
    for (const auto& p : pts) {
      CHECK(std::abs(p.report.von_neumann_direct - pts[0].report.von_neumann_direct) < 1e-14);
      CHECK(std::abs(p.report.linear - pts[0].report.linear) < 1e-14);
    }
  }
}

TEST_CASE("quench Hamiltonians are symmetric and the XXZ one conserves magnetization") {
  QuenchConfig cfg;
  cfg.length = 5;
  cfg.model = QuenchModel::XXZ;
  const Eigen::MatrixXd h = quench_hamiltonian(cfg);
  CHECK((h - h.transpose()).norm() == 0.0);
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (h(i, j) != 0.0) CHECK(__builtin_popcountll(i) == __builtin_popcountll(j));
    }
  }
  cfg.model = QuenchModel::TransverseFieldIsing;
  const Eigen::MatrixXd t = quench_hamiltonian(cfg);
  CHECK((t - t.transpose()).norm() == 0.0);
  // All-up energy: -J (L - 1).
  CHECK(t(0, 0) == doctest::Approx(-4.0));
}

TEST_CASE("quench configuration errors") {
  QuenchConfig cfg;
  cfg.length = 13;
  CHECK_THROWS_AS(quench_trajectory(cfg), Error);
  cfg.length = 6;
  cfg.cut = 0;
  CHECK_THROWS_AS(quench_trajectory(cfg), Error);
  cfg.cut = 6;
  CHECK_THROWS_AS(quench_trajectory(cfg), Error);
  CHECK(parse_quench_model("xxz") == QuenchModel::XXZ);
  CHECK_THROWS_AS(parse_quench_model("heisenberg"), Error);
}
