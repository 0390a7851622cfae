#include "espent/io.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "espent/error.hpp"

namespace espent {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double number_field(const json& entry, const char* key) {
  auto it = entry.find(key);
  if (it == entry.end() || !it->is_number()) {
    throw Error(ErrorCode::ParseError, std::string("amplitude entry lacks numeric '") + key + "'");
  }
  return it->get<double>();
}

std::size_t dimension_field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_number_integer() || it->get<long long>() < 1) {
    throw Error(ErrorCode::ParseError, std::string("'") + key + "' must be a positive integer");
  }
  return it->get<std::size_t>();
}

}  // namespace

PureBipartiteState parse_state_json(const std::string& text, bool renormalize) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "state document must be an object");
  const std::size_t n = dimension_field(doc, "n");
  const std::size_t d = dimension_field(doc, "d");
  auto rows = doc.find("amplitudes");
  if (rows == doc.end() || !rows->is_array()) {
    throw Error(ErrorCode::ParseError, "'amplitudes' must be an array of rows");
  }
  if (rows->size() != n) {
    std::ostringstream os;
    os << "expected " << n << " amplitude rows, found " << rows->size();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  CMatrix psi(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < n; ++j) {
    const json& row = (*rows)[j];
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "amplitude row is not an array");
    if (row.size() != d) {
      std::ostringstream os;
      os << "row " << j << " has " << row.size() << " entries, expected " << d;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    for (std::size_t i = 0; i < d; ++i) {
      const json& entry = row[i];
      if (!entry.is_object()) throw Error(ErrorCode::ParseError, "amplitude must be {re, im}");
      psi(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          cplx(number_field(entry, "re"), number_field(entry, "im"));
    }
  }
  return validate_state(psi, renormalize);
}

PureBipartiteState parse_state_csv(const std::string& text, bool renormalize) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> values;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      values.push_back(v);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw Error(ErrorCode::DimensionMismatch, "CSV holds no amplitude rows");
  const std::size_t cols = rows.front().size();
  if (cols == 0 || cols % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "CSV rows need an even number of columns (re, im pairs)");
  }
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != cols) {
      std::ostringstream os;
      os << "row " << j << " has " << rows[j].size() << " columns, expected " << cols;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(cols / 2);
  CMatrix psi(n, d);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) psi(j, i) = cplx(rows[j][2 * i], rows[j][2 * i + 1]);
  }
  return validate_state(psi, renormalize);
}

PureBipartiteState parse_state_file(const std::filesystem::path& path, bool renormalize) {
  const std::string text = read_file(path);
  const std::string ext = path.extension().string();
  if (ext == ".json") return parse_state_json(text, renormalize);
  if (ext == ".csv") return parse_state_csv(text, renormalize);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_state_json(text, renormalize);
  return parse_state_csv(text, renormalize);
}

std::string serialize_state(const PureBipartiteState& state) {
  json rows = json::array();
  for (std::size_t j = 0; j < state.n(); ++j) {
    json row = json::array();
    for (std::size_t i = 0; i < state.d(); ++i) {
      const cplx a = state(j, i);
      row.push_back({{"re", a.real()}, {"im", a.imag()}});
    }
    rows.push_back(std::move(row));
  }
  json doc = {{"n", state.n()}, {"d", state.d()}, {"amplitudes", std::move(rows)}};
  return doc.dump(2) + "\n";
}

PureBipartiteState random_haar_state(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw Error(ErrorCode::DimensionMismatch, "need n, d >= 1");
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix psi(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index j = 0; j < psi.rows(); ++j) {
    for (Eigen::Index i = 0; i < psi.cols(); ++i) {
      const double re = gauss(engine);
      const double im = gauss(engine);
      psi(j, i) = cplx(re, im);
    }
  }
  psi /= psi.norm();
  return validate_state(psi, false);
}

}  // namespace espent
