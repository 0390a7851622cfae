#include "espent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <gmpxx.h>

#include "bigfloat.hpp"
#include "espent/error.hpp"

namespace espent {

using detail::BigFloat;

namespace {

void require_orders(const ESPVector& esp, std::size_t highest, const char* who) {
  for (std::size_t k = 1; k <= std::min(highest, esp.n()); ++k) {
    if (!esp.has(k)) {
      std::ostringstream os;
      os << who << " needs e_1 .. e_" << std::min(highest, esp.n()) << " but only e_1 .. e_"
         << esp.up_to() << " are available";
      throw Error(ErrorCode::OrderOutOfRange, os.str());
    }
  }
}

mpz_class factorial(unsigned long k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Tracks the consecutive-small-terms stopping rule shared by both series.
class StoppingRule {
 public:
  explicit StoppingRule(const SeriesControl& ctrl) : ctrl_(ctrl) {}

  // Returns true once the rule is satisfied after seeing term_m.
  bool observe(double term, double partial) {
    if (std::abs(term) <= ctrl_.rel_tol * std::abs(partial)) {
      ++run_;
    } else {
      run_ = 0;
    }
    return run_ >= ctrl_.consecutive_small;
  }

 private:
  const SeriesControl& ctrl_;
  std::size_t run_ = 0;
};

// Pascal row C(m, 0..m), exact in the working precision.
class BinomialRow {
 public:
  explicit BinomialRow(mpfr_prec_t bits) : bits_(bits) { row_.emplace_back(bits_, 1.0); }

  void advance() {
    row_.emplace_back(bits_, 1.0);
    for (std::size_t j = row_.size() - 2; j >= 1; --j) row_[j] += row_[j - 1];
  }
  const BigFloat& operator[](std::size_t j) const { return row_[j]; }

 private:
  mpfr_prec_t bits_;
  std::vector<BigFloat> row_;
};

}  // namespace

PuritySequence::PuritySequence(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::OrderOutOfRange, "empty purity sequence");
  if (std::abs(values_[0] - 1.0) > kTolerance) {
    throw Error(ErrorCode::NotDensityMatrix, "p_1 differs from 1");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double p = values_[k];
    const bool in_range = p >= -kTolerance && p <= 1.0 + kTolerance;
    const bool monotone = k == 0 || p <= values_[k - 1] + kTolerance;
    if (!in_range || !monotone) {
      std::ostringstream os;
      os << "p_" << k + 1 << " = " << p << " breaks 1 >= p_2 >= p_3 >= ... >= 0";
      throw Error(ErrorCode::NotDensityMatrix, os.str());
    }
  }
}

void SeriesControl::validate() const {
  if (max_outer_terms < 1) throw Error(ErrorCode::InvalidControl, "max_outer_terms must be >= 1");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw Error(ErrorCode::InvalidControl, "rel_tol must lie in (0, 1)");
  }
  if (consecutive_small < 1) {
    throw Error(ErrorCode::InvalidControl, "consecutive_small must be >= 1");
  }
}

double linear_entropy(const ESPVector& esp) {
  require_orders(esp, 2, "linear_entropy");
  return 2.0 * esp[2];
}

double q_tilde(const ESPVector& esp) {
  require_orders(esp, 2, "q_tilde");
  return esp[2];
}

double renyi_entropy(const Spectrum& spec, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << "Renyi order " << alpha << " (need alpha > 0, alpha != 1)";
    throw Error(ErrorCode::InvalidOrder, os.str());
  }
  double trace = 0.0;
  for (double lambda : spec.values()) {
    if (lambda > 0.0) trace += std::pow(lambda, alpha);
  }
  return std::log(trace) / (1.0 - alpha);
}

double von_neumann_direct(const Spectrum& spec) {
  double s = 0.0;
  for (double lambda : spec.values()) {
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

PuritySequence purities_from_esp(const ESPVector& esp, std::size_t max_order) {
  if (max_order < 1) throw Error(ErrorCode::OrderOutOfRange, "need K >= 1");
  require_orders(esp, max_order, "purities_from_esp");

  std::vector<mpz_class> fact(max_order + 1);
  for (std::size_t k = 0; k <= max_order; ++k) fact[k] = factorial(k);

  std::vector<double> out;
  out.reserve(max_order);
  std::vector<std::size_t> mult(max_order + 1, 0);
  for (std::size_t k = 1; k <= max_order; ++k) {
    const std::size_t largest = std::min(k, esp.n());
    KahanSum acc;
    // Descend over the part size l = largest .. 1; the multiplicity of 1 is
    // whatever weight remains.
    std::function<void(std::size_t, std::size_t)> descend = [&](std::size_t l, std::size_t rem) {
      if (l == 1) {
        mult[1] = rem;
        std::size_t parts = 0;
        mpz_class denom = 1;
        double monomial = 1.0;
        for (std::size_t t = 1; t <= largest; ++t) {
          parts += mult[t];
          denom *= fact[mult[t]];
          if (mult[t] > 0) monomial *= std::pow(esp[t], static_cast<double>(mult[t]));
        }
        // k (-1)^k (parts-1)! prod (-1)^{p_l} / p_l!  ==  k (-1)^{k+parts} (parts-1)! / prod p_l!
        mpq_class coeff(mpz_class(k) * fact[parts - 1], denom);
        coeff.canonicalize();
        if ((k + parts) % 2 == 1) coeff = -coeff;
        acc.add(coeff.get_d() * monomial);
        return;
      }
      for (std::size_t p = 0; p * l <= rem; ++p) {
        mult[l] = p;
        descend(l - 1, rem - p * l);
      }
      mult[l] = 0;
    };
    descend(largest, k);
    out.push_back(acc.sum);
  }
  return PuritySequence(std::move(out));
}

PuritySequence purities_recurrence(const ESPVector& esp, std::size_t max_order) {
  if (max_order < 1) throw Error(ErrorCode::OrderOutOfRange, "need K >= 1");
  require_orders(esp, max_order, "purities_recurrence");
  std::vector<double> p(max_order + 1, 0.0);
  for (std::size_t k = 1; k <= max_order; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i < k; ++i) {
      const double term = esp[i] * p[k - i];
      s += (i % 2 == 1) ? term : -term;
    }
    const double last = static_cast<double>(k) * esp[k];
    s += (k % 2 == 1) ? last : -last;
    p[k] = s;
  }
  p.erase(p.begin());
  return PuritySequence(std::move(p));
}

SeriesResult von_neumann_series(const ESPVector& esp, const SeriesControl& ctrl) {
  ctrl.validate();
  const std::size_t n = esp.n();
  require_orders(esp, n, "von_neumann_series");
  const std::size_t max_m = ctrl.max_outer_terms;
  const mpfr_prec_t bits = detail::series_precision_bits(max_m);

  std::vector<BigFloat> e;
  e.reserve(n + 1);
  e.emplace_back(bits, 1.0);
  for (std::size_t l = 1; l <= n; ++l) e.emplace_back(bits, esp[l]);

  // Power sums p_1 .. p_{M+1} by Newton's recurrence, in full precision.
  std::vector<BigFloat> p;
  p.reserve(max_m + 2);
  p.emplace_back(bits, static_cast<double>(n));
  for (std::size_t k = 1; k <= max_m + 1; ++k) {
    BigFloat s(bits);
    for (std::size_t i = 1; i < k && i <= n; ++i) {
      if (i % 2 == 1) {
        s.add_product(e[i], p[k - i]);
      } else {
        s.sub_product(e[i], p[k - i]);
      }
    }
    if (k <= n) {
      BigFloat last = e[k];
      last *= static_cast<long>(k);
      if (k % 2 == 1) {
        s += last;
      } else {
        s -= last;
      }
    }
    p.push_back(std::move(s));
  }

  SeriesResult result;
  StoppingRule rule(ctrl);
  BinomialRow binom(bits);
  BigFloat partial(bits);
  BigFloat inner(bits);
  for (std::size_t m = 1; m <= max_m; ++m) {
    binom.advance();
    inner = BigFloat(bits);
    for (std::size_t k = 1; k <= m + 1; ++k) {
      if (k % 2 == 1) {
        inner.add_product(binom[k - 1], p[k]);
      } else {
        inner.sub_product(binom[k - 1], p[k]);
      }
    }
    inner /= static_cast<unsigned long>(m);
    partial += inner;
    result.terms_used = m;
    if (rule.observe(inner.to_double(), partial.to_double())) {
      result.converged = true;
      break;
    }
  }
  result.value = partial.to_double();
  return result;
}

namespace {

// Lazily enumerated tuples (p_2 .. p_r) of s_r_truncated, folded into the
// k-indexed sums
//   T(k) = sum_{tuples, w <= k} (-1)^a prod e_l^{p_l}/p_l! * (k-1-a)!/(k-w)!
// so that the m-th outer term is -(1/m) sum_k k (-1)^k C(m, k-1) T(k).
// Tuple monomials are accumulated per (w, q = w - a) before the factorial
// ratios are applied, since the ratio depends on the tuple only through q.
class TruncatedSeriesTable {
 public:
  TruncatedSeriesTable(const ESPVector& esp, std::size_t r, mpfr_prec_t bits)
      : r_(r), bits_(bits), scratch_(r + 1, BigFloat(bits)) {
    for (std::size_t l = 0; l <= r; ++l) e_.push_back(esp[l]);
    t_.emplace_back(bits_);
    grid_.emplace_back(1, BigFloat(bits_));
  }

  // T(k) for 1 <= k <= ready().
  const BigFloat& at(std::size_t k) const { return t_[k]; }
  std::size_t ready() const { return t_.size() - 1; }

  // Adds every tuple with ready() < w <= max_weight and the T(k) it unlocks.
  // Earlier entries are never touched, so results do not depend on how the
  // table grew.
  void extend_to(std::size_t max_weight) {
    const std::size_t previous = ready();
    if (max_weight <= previous) return;
    const std::size_t K = max_weight;

    // e_l^p / p! for every part size.
    powers_.assign(r_ + 1, {});
    for (std::size_t l = 2; l <= r_; ++l) {
      powers_[l].emplace_back(bits_, 1.0);
      if (e_[l] == 0.0) continue;
      const BigFloat e(bits_, e_[l]);
      for (std::size_t p = 1; p * l <= K; ++p) {
        BigFloat next = powers_[l].back();
        next *= e;
        next /= static_cast<unsigned long>(p);
        powers_[l].push_back(std::move(next));
      }
    }
    for (std::size_t w = grid_.size(); w <= K; ++w) grid_.emplace_back(w / 2 + 1, BigFloat(bits_));
    if (r_ >= 2) enumerate(r_, 0, 0, false, BigFloat(bits_, 1.0), K, previous);

    // Factorial ratio (k-1-a)!/(k-w)! = (j+q-1)!/j! with j = k-w.
    t_.resize(K + 1, BigFloat(bits_));
    std::vector<BigFloat> ratio;
    for (std::size_t q = 1; 2 * q <= K; ++q) {
      ratio.clear();
      mpz_class f = factorial(q - 1);
      for (std::size_t j = 0; j + 2 * q <= K; ++j) {
        if (j > 0) {
          f *= static_cast<unsigned long>(j + q - 1);
          f /= static_cast<unsigned long>(j);
        }
        ratio.emplace_back(bits_, f);
      }
      for (std::size_t w = 2 * q; w <= K; ++w) {
        const BigFloat& g = grid_[w][q];
        if (g.is_zero()) continue;
        for (std::size_t k = std::max(w, previous + 1); k <= K; ++k) t_[k].add_product(g, ratio[k - w]);
      }
    }
  }

 private:
  // Recursive descent over l = r .. 2 with p_l running upward, so leaves
  // appear in lexicographic order of (p_r, ..., p_2). The weight budget
  // prunes each level; at l = 2 the loop starts at the first p_2 that puts
  // the tuple above `floor`.
  void enumerate(std::size_t l, std::size_t weight, std::size_t parts, bool odd, const BigFloat& monomial,
                 std::size_t max_weight, std::size_t floor) {
    const auto& pw = powers_[l];
    if (l == 2) {
      std::size_t p = 0;
      if (weight <= floor) p = (floor - weight) / 2 + 1;
      for (; p < pw.size() && weight + 2 * p <= max_weight; ++p) {
        auto& cell = grid_[weight + 2 * p][parts + p];
        if (odd != (p % 2 == 1)) {
          cell.sub_product(monomial, pw[p]);
        } else {
          cell.add_product(monomial, pw[p]);
        }
      }
      return;
    }
    const bool flips = (l - 1) % 2 == 1;
    for (std::size_t p = 0; p < pw.size() && weight + p * l <= max_weight; ++p) {
      const bool parity = odd != (flips && p % 2 == 1);
      if (p == 0) {
        enumerate(l - 1, weight, parts, parity, monomial, max_weight, floor);
      } else {
        scratch_[l].assign_product(monomial, pw[p]);
        enumerate(l - 1, weight + p * l, parts + p, parity, scratch_[l], max_weight, floor);
      }
    }
  }

  std::size_t r_;
  mpfr_prec_t bits_;
  std::vector<double> e_;
  std::vector<BigFloat> scratch_;
  std::vector<std::vector<BigFloat>> powers_;
  // grid_[w][q]: signed monomial sum of the tuples with weight w and q parts.
  std::vector<std::vector<BigFloat>> grid_;
  std::vector<BigFloat> t_;
};

}  // namespace

SeriesResult s_r_truncated(const ESPVector& esp, std::size_t r, const SeriesControl& ctrl) {
  ctrl.validate();
  if (r < 1 || r > esp.n()) {
    std::ostringstream os;
    os << "order " << r << " outside 1.." << esp.n();
    throw Error(ErrorCode::OrderOutOfRange, os.str());
  }
  require_orders(esp, r, "s_r_truncated");
  const std::size_t max_m = ctrl.max_outer_terms;
  const mpfr_prec_t bits = detail::series_precision_bits(max_m);

  TruncatedSeriesTable table(esp, r, bits);
  SeriesResult result;
  StoppingRule rule(ctrl);
  BinomialRow binom(bits);
  BigFloat partial(bits);
  BigFloat inner(bits);
  BigFloat weight(bits);
  std::size_t block = 32;
  for (std::size_t m = 1; m <= max_m; ++m) {
    if (table.ready() < m + 1) {
      table.extend_to(std::min(max_m + 1, std::max(m + 1, block)));
      block *= 2;
    }
    binom.advance();
    inner = BigFloat(bits);
    for (std::size_t k = 1; k <= m + 1; ++k) {
      weight = binom[k - 1];
      weight *= static_cast<long>(k);
      if (k % 2 == 0) {
        inner.add_product(weight, table.at(k));
      } else {
        inner.sub_product(weight, table.at(k));
      }
    }
    inner /= static_cast<unsigned long>(m);
    inner.negate();
    partial += inner;
    result.terms_used = m;
    if (rule.observe(inner.to_double(), partial.to_double())) {
      result.converged = true;
      break;
    }
  }
  result.value = partial.to_double();
  return result;
}

double truncation_tuple_count(std::size_t r, std::size_t max_weight) {
  // ways[w] = number of multisets of parts in {2..r} with total w.
  std::vector<double> ways(max_weight + 1, 0.0);
  ways[0] = 1.0;
  for (std::size_t l = 2; l <= r; ++l) {
    for (std::size_t w = l; w <= max_weight; ++w) ways[w] += ways[w - l];
  }
  double total = 0.0;
  for (std::size_t w = 1; w <= max_weight; ++w) total += ways[w];
  return total;
}

}  // namespace espent
