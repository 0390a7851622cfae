#include "espent/quench.hpp"

#include <iomanip>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "espent/error.hpp"
#include "report_json.hpp"

namespace espent {

QuenchModel parse_quench_model(const std::string& name) {
  if (name == "tfi") return QuenchModel::TransverseFieldIsing;
  if (name == "xxz") return QuenchModel::XXZ;
  throw Error(ErrorCode::ParseError, "unknown model '" + name + "' (expected tfi or xxz)");
}

std::string to_string(QuenchModel model) {
  return model == QuenchModel::TransverseFieldIsing ? "tfi" : "xxz";
}

namespace {

void check_config(const QuenchConfig& config) {
  if (config.length > kMaxChainLength) {
    throw Error(ErrorCode::TooLarge, "chain length " + std::to_string(config.length) + " exceeds 12");
  }
  if (config.length < 2 || config.cut < 1 || config.cut >= config.length) {
    throw Error(ErrorCode::InvalidCut, "cut must satisfy 1 <= cut < length");
  }
  if (!(config.t_max >= 0.0)) throw Error(ErrorCode::ParseError, "t_max must be nonnegative");
}

bool spin_up(std::size_t state, std::size_t site, std::size_t length) {
  return ((state >> (length - 1 - site)) & 1U) == 0;
}

}  // namespace

Eigen::MatrixXd quench_hamiltonian(const QuenchConfig& config) {
  check_config(config);
  const std::size_t length = config.length;
  const std::size_t dim = std::size_t{1} << length;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    const auto row = static_cast<Eigen::Index>(s);
    for (std::size_t i = 0; i + 1 < length; ++i) {
      const double zz = spin_up(s, i, length) == spin_up(s, i + 1, length) ? 1.0 : -1.0;
      const std::size_t pair_flip = s ^ (std::size_t{1} << (length - 1 - i)) ^ (std::size_t{1} << (length - 2 - i));
      if (config.model == QuenchModel::TransverseFieldIsing) {
        h(row, row) -= config.coupling * zz;
      } else {
        h(row, row) += config.coupling * config.anisotropy * zz;
        // XX + YY = 2 (S+S- + S-S+): hops antiparallel neighbours.
        if (zz < 0) h(static_cast<Eigen::Index>(pair_flip), row) += 2.0 * config.coupling;
      }
    }
    if (config.model == QuenchModel::TransverseFieldIsing) {
      for (std::size_t i = 0; i < length; ++i) {
        const std::size_t flipped = s ^ (std::size_t{1} << (length - 1 - i));
        h(static_cast<Eigen::Index>(flipped), row) -= config.field;
      }
    }
  }
  return h;
}

std::vector<QuenchPoint> quench_trajectory(const QuenchConfig& config) {
  check_config(config);
  const std::size_t length = config.length;
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << length);

  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
  if (config.model == QuenchModel::TransverseFieldIsing) {
    psi0(0) = 1.0;
  } else {
    std::size_t neel = 0;
    for (std::size_t i = 1; i < length; i += 2) neel |= std::size_t{1} << (length - 1 - i);
    psi0(static_cast<Eigen::Index>(neel)) = 1.0;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(quench_hamiltonian(config));
  const Eigen::MatrixXcd vectors = solver.eigenvectors().cast<cplx>();
  const Eigen::VectorXd& energies = solver.eigenvalues();
  const Eigen::VectorXcd overlaps = vectors.adjoint() * psi0;

  const auto n = static_cast<Eigen::Index>(std::size_t{1} << config.cut);
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << (length - config.cut));
  std::vector<QuenchPoint> points;
  points.reserve(config.steps + 1);
  for (std::size_t step = 0; step <= config.steps; ++step) {
    const double t = config.steps == 0 ? 0.0 : config.t_max * static_cast<double>(step) / static_cast<double>(config.steps);
    Eigen::VectorXcd phased(dim);
    for (Eigen::Index k = 0; k < dim; ++k) phased(k) = std::exp(cplx(0.0, -energies(k) * t)) * overlaps(k);
    const Eigen::VectorXcd psi = vectors * phased;
    // Row-major reshape: the first `cut` sites are the high bits, i.e. the row.
    CMatrix amps(n, d);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) amps(j, i) = psi(j * d + i);
    }
    points.push_back({t, analyze(validate_state(amps, false), config.analysis)});
  }
  return points;
}

std::string trajectory_to_json(const QuenchConfig& config, const std::vector<QuenchPoint>& points) {
  using nlohmann::json;
  json pts = json::array();
  for (const auto& p : points) pts.push_back({{"time", p.time}, {"report", detail::report_json(p.report)}});
  json doc = {
      {"schema_version", kReportSchemaVersion},
      {"model", to_string(config.model)},
      {"length", config.length},
      {"cut", config.cut},
      {"parameters",
       {{"coupling", config.coupling}, {"field", config.field}, {"anisotropy", config.anisotropy}}},
      {"points", std::move(pts)},
  };
  return doc.dump(2) + "\n";
}

std::string trajectory_to_table(const std::vector<QuenchPoint>& points) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(8);
  if (points.empty()) return {};
  os << "# t";
  for (const auto& [r, s] : points.front().report.s_r) os << "\tS_" << r;
  os << "\tS_vN_series\tS_vN\tconverged\n";
  for (const auto& p : points) {
    os << std::setprecision(4) << p.time << std::setprecision(8);
    for (const auto& [r, s] : p.report.s_r) os << '\t' << s.value;
    os << '\t' << p.report.von_neumann_series.value << '\t' << p.report.von_neumann_direct << '\t'
       << (p.report.all_converged() ? "yes" : "no") << '\n';
  }
  return os.str();
}

}  // namespace espent
