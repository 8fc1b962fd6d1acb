#pragma once

#include <mpfr.h>

#include <string>

#include "dquad/numerics.hpp"

namespace dquad {

enum class Cmp { Less, Greater, Undecided };

/// Interval enclosure [lo, hi] with outward (directed) rounding on every
/// operation, so the exact value of the underlying expression is always
/// contained. Decimal constants enter through exact rationals; hardware
/// floating point never touches a comparison.
class GuardedReal {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 128;
  static constexpr mpfr_prec_t kMaxPrec = 4096;

  /// Process-wide starting precision for escalating comparisons; kDefaultPrec
  /// unless raised (clamped to [kDefaultPrec, kMaxPrec]).
  static mpfr_prec_t start_precision();
  static void set_start_precision(mpfr_prec_t prec);

  explicit GuardedReal(mpfr_prec_t prec = kDefaultPrec);
  GuardedReal(const GuardedReal& o);
  GuardedReal(GuardedReal&& o) noexcept;
  GuardedReal& operator=(const GuardedReal& o);
  GuardedReal& operator=(GuardedReal&& o) noexcept;
  ~GuardedReal();

  static GuardedReal from_integer(const BigInt& v, mpfr_prec_t prec = kDefaultPrec);
  static GuardedReal from_rational(const Rational& q, mpfr_prec_t prec = kDefaultPrec);
  static GuardedReal from_decimal(std::string_view s, mpfr_prec_t prec = kDefaultPrec);
  static GuardedReal from_long(long v, mpfr_prec_t prec = kDefaultPrec);

  GuardedReal operator+(const GuardedReal& o) const;
  GuardedReal operator-(const GuardedReal& o) const;
  GuardedReal operator*(const GuardedReal& o) const;
  GuardedReal operator/(const GuardedReal& o) const;  // divisor must not straddle 0
  GuardedReal neg() const;
  GuardedReal abs() const;

  GuardedReal sqrt() const;            // requires lo >= 0
  GuardedReal ln() const;              // requires lo > 0
  GuardedReal pow_int(unsigned e) const;       // requires lo >= 0
  GuardedReal rootn(unsigned n) const;         // requires lo >= 0, n >= 1
  GuardedReal pow_ratio(unsigned num, unsigned den) const;  // x^(num/den), x >= 0

  /// Sign classification of the whole interval.
  bool surely_positive() const;   // lo > 0
  bool surely_negative() const;   // hi < 0
  bool straddles_zero() const;

  bool contains(const Rational& q) const;
  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up
  mpfr_prec_t precision() const { return prec_; }
  /// Upper bound on (hi - lo), rounded up.
  double width_double() const;

  std::string str(int digits = 10) const;

  friend Cmp compare(const GuardedReal& a, const GuardedReal& b);
  Cmp compare_rational(const Rational& q) const;

 private:
  mpfr_t lo_, hi_;
  mpfr_prec_t prec_;
};

Cmp compare(const GuardedReal& a, const GuardedReal& b);

}  // namespace dquad
