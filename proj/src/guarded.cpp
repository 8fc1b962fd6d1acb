#include "dquad/guarded.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <sstream>

namespace dquad {

namespace {
std::atomic<mpfr_prec_t> g_start_prec{GuardedReal::kDefaultPrec};
}

mpfr_prec_t GuardedReal::start_precision() { return g_start_prec.load(); }

void GuardedReal::set_start_precision(mpfr_prec_t prec) {
  g_start_prec.store(std::clamp<mpfr_prec_t>(prec, kDefaultPrec, kMaxPrec));
}

GuardedReal::GuardedReal(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

GuardedReal::GuardedReal(const GuardedReal& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);  // same precision: exact
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

GuardedReal::GuardedReal(GuardedReal&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

GuardedReal& GuardedReal::operator=(const GuardedReal& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.prec_);
    mpfr_set_prec(hi_, o.prec_);
    prec_ = o.prec_;
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

GuardedReal& GuardedReal::operator=(GuardedReal&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

GuardedReal::~GuardedReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

GuardedReal GuardedReal::from_integer(const BigInt& v, mpfr_prec_t prec) {
  GuardedReal r(prec);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::from_rational(const Rational& q, mpfr_prec_t prec) {
  GuardedReal r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::from_decimal(std::string_view s, mpfr_prec_t prec) {
  return from_rational(rational_from_decimal(s), prec);
}

GuardedReal GuardedReal::from_long(long v, mpfr_prec_t prec) {
  GuardedReal r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::operator+(const GuardedReal& o) const {
  GuardedReal r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::operator-(const GuardedReal& o) const {
  GuardedReal r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::neg() const {
  GuardedReal r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::abs() const {
  if (!straddles_zero()) return surely_negative() || mpfr_sgn(hi_) <= 0 ? neg() : *this;
  GuardedReal r(prec_);
  mpfr_set_zero(r.lo_, 1);
  mpfr_t na;
  mpfr_init2(na, prec_);
  mpfr_neg(na, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, na, hi_, MPFR_RNDU);
  mpfr_clear(na);
  return r;
}

GuardedReal GuardedReal::operator*(const GuardedReal& o) const {
  GuardedReal r(std::max(prec_, o.prec_));
  // min/max over the four endpoint products, rounded outward
  mpfr_t t, best;
  mpfr_init2(t, r.prec_);
  mpfr_init2(best, r.prec_);
  const mpfr_srcptr xs[2] = {lo_, hi_};
  const mpfr_srcptr ys[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, best) < 0) mpfr_set(best, t, MPFR_RNDD);
      first = false;
    }
  mpfr_set(r.lo_, best, MPFR_RNDD);
  first = true;
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, best) > 0) mpfr_set(best, t, MPFR_RNDU);
      first = false;
    }
  mpfr_set(r.hi_, best, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(best);
  return r;
}

GuardedReal GuardedReal::operator/(const GuardedReal& o) const {
  if (o.straddles_zero() || mpfr_zero_p(o.lo_) || mpfr_zero_p(o.hi_))
    throw std::domain_error("GuardedReal: divisor interval touches zero");
  GuardedReal r(std::max(prec_, o.prec_));
  mpfr_t t, best;
  mpfr_init2(t, r.prec_);
  mpfr_init2(best, r.prec_);
  const mpfr_srcptr xs[2] = {lo_, hi_};
  const mpfr_srcptr ys[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, best) < 0) mpfr_set(best, t, MPFR_RNDD);
      first = false;
    }
  mpfr_set(r.lo_, best, MPFR_RNDD);
  first = true;
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, best) > 0) mpfr_set(best, t, MPFR_RNDU);
      first = false;
    }
  mpfr_set(r.hi_, best, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(best);
  return r;
}

GuardedReal GuardedReal::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("GuardedReal: sqrt of interval below zero");
  GuardedReal r(prec_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::ln() const {
  if (mpfr_sgn(lo_) <= 0) throw std::domain_error("GuardedReal: ln of interval not above zero");
  GuardedReal r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::pow_int(unsigned e) const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("GuardedReal: pow_int of interval below zero");
  GuardedReal r(prec_);
  mpfr_pow_ui(r.lo_, lo_, e, MPFR_RNDD);
  mpfr_pow_ui(r.hi_, hi_, e, MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::rootn(unsigned n) const {
  if (n == 0) throw std::domain_error("GuardedReal: 0th root");
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("GuardedReal: rootn of interval below zero");
  GuardedReal r(prec_);
  mpfr_rootn_ui(r.lo_, lo_, n, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, hi_, n, MPFR_RNDU);
  return r;
}

GuardedReal GuardedReal::pow_ratio(unsigned num, unsigned den) const {
  // x^(num/den) = (x^num)^(1/den); both steps monotone for x >= 0
  return pow_int(num).rootn(den);
}

bool GuardedReal::surely_positive() const { return mpfr_sgn(lo_) > 0; }
bool GuardedReal::surely_negative() const { return mpfr_sgn(hi_) < 0; }
bool GuardedReal::straddles_zero() const {
  return mpfr_sgn(lo_) < 0 && mpfr_sgn(hi_) > 0;
}

bool GuardedReal::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

double GuardedReal::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double GuardedReal::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double GuardedReal::width_double() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

std::string GuardedReal::str(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  double a = lo_double(), b = hi_double();
  if (a == b) {
    os << a;
  } else {
    os << "[" << a << ", " << b << "]";
  }
  return os.str();
}

Cmp compare(const GuardedReal& a, const GuardedReal& b) {
  if (mpfr_cmp(a.hi_, b.lo_) < 0) return Cmp::Less;
  if (mpfr_cmp(a.lo_, b.hi_) > 0) return Cmp::Greater;
  return Cmp::Undecided;
}

Cmp GuardedReal::compare_rational(const Rational& q) const {
  if (mpfr_cmp_q(hi_, q.get_mpq_t()) < 0) return Cmp::Less;
  if (mpfr_cmp_q(lo_, q.get_mpq_t()) > 0) return Cmp::Greater;
  return Cmp::Undecided;
}

}  // namespace dquad
