#pragma once

// Minimal RAII wrapper over an MPFR value with an explicit, per-object
// precision. The alternating series in entropy.cpp cancel roughly m bits at
// outer index m, so they are accumulated at a precision that grows with the
// truncation depth.

#include <cstddef>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace espent::detail {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(mpfr_prec_t bits, double x) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(mpfr_prec_t bits, const mpz_class& z) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  BigFloat& operator+=(const BigFloat& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator-=(const BigFloat& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(const BigFloat& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(const BigFloat& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(const mpz_class& z) {
    mpfr_mul_z(v_, v_, z.get_mpz_t(), MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(const mpz_class& z) {
    mpfr_div_z(v_, v_, z.get_mpz_t(), MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(unsigned long u) {
    mpfr_div_ui(v_, v_, u, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(long s) {
    mpfr_mul_si(v_, v_, s, MPFR_RNDN);
    return *this;
  }
  void negate() { mpfr_neg(v_, v_, MPFR_RNDN); }

  /// this = a * b.
  void assign_product(const BigFloat& a, const BigFloat& b) { mpfr_mul(v_, a.v_, b.v_, MPFR_RNDN); }
  /// this += a * b, with a single rounding.
  void add_product(const BigFloat& a, const BigFloat& b) {
    mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
  }
  /// this -= a * b.
  void sub_product(const BigFloat& a, const BigFloat& b) {
    mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN);
    mpfr_neg(v_, v_, MPFR_RNDN);
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

 private:
  mpfr_t v_;
};

/// Working precision for an alternating series truncated at `max_terms`.
inline mpfr_prec_t series_precision_bits(std::size_t max_terms) {
  return static_cast<mpfr_prec_t>(128 + 2 * max_terms);
}

}  // namespace espent::detail
