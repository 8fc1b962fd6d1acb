#include "dquad/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace dquad {

namespace {

// Decimal constants appearing in the bound machinery, parsed as exact
// rationals before any interval conversion.
namespace consts {
constexpr const char* kMagnitude = "396.59";     // hypothesis floor on N
constexpr const char* kLambdaNum = "2.500788";   // lambda numerator coefficient
constexpr const char* kLambdaDen = "0.04216";    // lambda denominator coefficient
constexpr const char* kNUpperOuter = "8.4034e13";
constexpr const char* kNUpperMid = "0.20533";
constexpr const char* kNUpperInner = "0.01685";
constexpr const char* kNLowerOdd = "0.09226";
constexpr const char* kNLowerEven = "0.340134";
constexpr const char* kEpsSlope = "0.999";
constexpr const char* kMBoundInner = "38.92";
constexpr const char* kMBoundRhs = "2.7717e16";
constexpr const char* kVmGrowth = "1.00317";
constexpr const char* kC12Lower = "0.2465";      // n > 0.2465 c^(1/12)
}  // namespace consts

GuardedReal dec(const char* s, mpfr_prec_t p) { return GuardedReal::from_decimal(s, p); }

GuardedReal grat(const Rational& q, mpfr_prec_t p) { return GuardedReal::from_rational(q, p); }

GuardedReal gint(const BigInt& v, mpfr_prec_t p) { return GuardedReal::from_integer(v, p); }

Rational qpow(const Rational& q, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= q;
  return r;
}

BigInt ipow(const BigInt& b, unsigned e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

BigInt BoundParams::a1_prime() const {
  BigInt d = 4 * (a2 - a1);
  BigInt s = 4 * a1;
  return d > s ? d : s;
}

BigInt BoundParams::N() const { return a1 * a2 * c; }

bool rickert_hypotheses(const BoundParams& p) {
  if (!(p.a1 > 0 && p.a1 <= p.a2 - 2 && p.a2 >= 3)) return false;
  BigInt n = p.N();
  if (!mpz_divisible_p(n.get_mpz_t(), BigInt(p.a1 * p.a2).get_mpz_t())) return false;
  // N >= 396.59 a1' a2^2 (a2-a1)^2, exactly: 100 N >= 39659 (...)
  BigInt rhs = BigInt(39659) * p.a1_prime() * p.a2 * p.a2 * (p.a2 - p.a1) * (p.a2 - p.a1);
  return 100 * n >= rhs;
}

LambdaResult lambda_value(const BoundParams& p, mpfr_prec_t prec) {
  if (!rickert_hypotheses(p))
    throw HypothesisError("lambda_value: rickert_hypotheses violated");
  BigInt n = p.N();
  Rational arg1 = rational_from_decimal(consts::kLambdaNum) *
                  Rational(p.a1_prime() * p.a2 * n, p.a1);
  Rational arg2 = rational_from_decimal(consts::kLambdaDen) *
                  Rational(n * n, p.a1 * p.a2 * (p.a2 - p.a1) * (p.a2 - p.a1));
  for (mpfr_prec_t pr = prec; pr <= GuardedReal::kMaxPrec; pr *= 2) {
    GuardedReal lam = grat(1, pr) + grat(arg1, pr).ln() / grat(arg2, pr).ln();
    Cmp below2 = lam.compare_rational(Rational(2));
    if (below2 == Cmp::Greater)
      throw HypothesisError("lambda_value: lambda >= 2");
    if (below2 == Cmp::Less) {
      Rational t1 = Rational(n + 4 * p.a2, n);
      Rational t2 = Rational(n + 4 * p.a1, n);
      return {lam, grat(t1, pr).sqrt(), grat(t2, pr).sqrt()};
    }
  }
  throw UndecidedError("lambda_value: lambda vs 2 undecided at max precision");
}

GuardedReal phi(const BigInt& c, const BoundParams& p, mpfr_prec_t prec) {
  BigInt ap = p.a1_prime();
  Rational c1 = rational_from_decimal(consts::kNUpperOuter);  // * sqrt(a1 a1') a2^2 c
  Rational c2 = rational_from_decimal(consts::kNUpperMid) * Rational(1, p.a2 - p.a1);
  Rational c4 = rational_from_decimal(consts::kNUpperInner) *
                Rational(p.a1, ap * p.a2 * (p.a2 - p.a1) * (p.a2 - p.a1));
  GuardedReal gc = gint(c, prec);
  GuardedReal arg1 = grat(c1, prec) * gint(p.a1, prec).sqrt() * gint(ap, prec).sqrt() *
                     gint(p.a2 * p.a2, prec) * gc;
  GuardedReal arg2 = grat(c2, prec) * gint(p.a1, prec).sqrt() * gint(p.a2, prec).sqrt() * gc;
  GuardedReal arg3 = gint(p.b, prec) * gc;
  GuardedReal arg4 = grat(c4, prec) * gc;
  for (const GuardedReal* a : {&arg1, &arg2, &arg3, &arg4}) {
    if (!a->surely_positive())
      throw HypothesisError("phi: logarithm argument not positive");
  }
  return grat(8, prec) * arg1.ln() * arg2.ln() / (arg3.ln() * arg4.ln());
}

GuardedReal n_upper(const BoundParams& p, mpfr_prec_t prec) {
  if (!rickert_hypotheses(p))
    throw HypothesisError("n_upper: rickert_hypotheses violated");
  if (p.b < 100000)
    throw HypothesisError("n_upper: b below 1e5");
  // c > 4.1e-5 a2 b^3, exactly: 1e6 c > 41 a2 b^3
  if (!(pow10(6) * p.c > 41 * p.a2 * ipow(p.b, 3)))
    throw HypothesisError("n_upper: c > 4.1e-5 a2 b^3 violated");
  return phi(p.c, p, prec);
}

GuardedReal n_lower(const BigInt& b, const BigInt& c, Parity parity, const BigInt& a2,
                    mpfr_prec_t prec) {
  if (b < 100000)
    throw HypothesisError("n_lower: b below 1e5");
  // c > max{0.56 b^3, 0.001 a2^2 b^2}
  if (!(100 * c > 56 * ipow(b, 3)))
    throw HypothesisError("n_lower: c > 0.56 b^3 violated");
  if (!(1000 * c > a2 * a2 * b * b))
    throw HypothesisError("n_lower: c > 0.001 a2^2 b^2 violated");
  GuardedReal gb = gint(b, prec), gc = gint(c, prec);
  if (parity == Parity::Odd)
    return dec(consts::kNLowerOdd, prec) * gc.rootn(4) / gb.sqrt();
  return dec(consts::kNLowerEven, prec) * gc.sqrt() / gb.sqrt();
}

GuardedReal m_upper_epsilon(long n, const Rational& epsilon, mpfr_prec_t prec) {
  if (epsilon < 1 || epsilon >= 12)
    throw HypothesisError("m_upper_epsilon: epsilon outside [1, 12)");
  Rational slope = (epsilon + 1) / (rational_from_decimal(consts::kEpsSlope) * epsilon);
  Rational value = slope * n + Rational(3, 2) - Rational(2, 5) * slope;
  return grat(value, prec);
}

bool phi_decreasing_condition(const BoundParams& p) {
  // c > 0.01685^-1 a1^-1 a1' a2 (a2-a1)^2  <=>  1685 a1 c > 1e5 a1' a2 (a2-a1)^2
  BigInt lhs = 1685 * p.a1 * p.c;
  BigInt rhs = pow10(5) * p.a1_prime() * p.a2 * (p.a2 - p.a1) * (p.a2 - p.a1);
  return lhs > rhs;
}

GuardedReal b_upper_lemma31(const BigInt& a1, const BigInt& a2, mpfr_prec_t prec) {
  if (!(0 < a1 && a1 < a2)) throw HypothesisError("b_upper_lemma31: need 0 < a1 < a2");
  BigInt ap = a2 - a1 > a1 ? BigInt(4 * (a2 - a1)) : BigInt(4 * a1);
  return dec(consts::kNUpperOuter, prec) * gint(a1, prec).sqrt() * gint(ap, prec).sqrt() *
         gint(a2 * a2, prec);
}

// ---------------------------------------------------------------------------
// Inequality registry
// ---------------------------------------------------------------------------

namespace {

// lhs < mult * ln(a1g) ln(a2g) / (ln(d1g) ln(d2g)), three-valued
Tri quotient_compare(const GuardedReal& lhs, const GuardedReal& n1, const GuardedReal& n2,
                     const GuardedReal& d1, const GuardedReal& d2, const Rational& mult,
                     mpfr_prec_t prec) {
  for (const GuardedReal* a : {&n1, &n2, &d1, &d2}) {
    if (!a->surely_positive()) {
      if (a->hi_double() <= 0) return Tri::False;  // log argument <= 0: no bound holds
      return Tri::Undecided;
    }
  }
  GuardedReal den = d1.ln() * d2.ln();
  if (den.straddles_zero() || !den.surely_positive()) {
    if (den.hi_double() <= 0) return Tri::False;
    return Tri::Undecided;
  }
  GuardedReal rhs = grat(mult, prec) * n1.ln() * n2.ln() / den;
  switch (compare(lhs, rhs)) {
    case Cmp::Less:
      return Tri::True;
    case Cmp::Greater:
      return Tri::False;
    default:
      return Tri::Undecided;
  }
}

const std::vector<IneqInfo>& registry_table() {
  static const std::vector<IneqInfo> table = {
      {IneqId::Thm51Case1, "thm51-case1", "a2", true, pow10(9)},
      {IneqId::Thm51Case2, "thm51-case2", "a2", true, pow10(9)},
      {IneqId::Prop4a1, "prop-4a1", "a2", true, pow10(9)},
      {IneqId::A2_01Case1, "a2-01-case1", "a1", false, pow10(9)},
      {IneqId::A2_01Case2, "a2-01-case2", "b", false, pow10(9)},
      {IneqId::A2_0251Case1, "a2-0251-case1", "a1", false, pow10(9)},
      {IneqId::A2_0251Case2, "a2-0251-case2", "b", false, pow10(9)},
      {IneqId::Sec6SmallA1, "sec6-small-a1", "b", false, pow10(12)},
      {IneqId::Sec6LargeA1, "sec6-large-a1", "a2", false, pow10(9)},
      {IneqId::Lemma31Contradiction, "lemma31-contradiction", "a2", false, pow10(9)},
  };
  return table;
}

}  // namespace

const std::vector<IneqInfo>& ineq_registry() { return registry_table(); }

const IneqInfo& ineq_info(IneqId id) {
  for (const auto& e : registry_table())
    if (e.id == id) return e;
  throw std::logic_error("ineq_info: unregistered id");
}

std::optional<IneqId> ineq_from_name(std::string_view name) {
  for (const auto& e : registry_table())
    if (name == e.name) return e.id;
  return std::nullopt;
}

Tri eval_inequality(IneqId id, const BigInt& value, const Rational& k, mpfr_prec_t prec) {
  if (value < 1) return Tri::False;
  const mpfr_prec_t p = prec;
  GuardedReal V = gint(value, p);
  Rational k3 = qpow(k, 3), k4 = qpow(k, 4);
  GuardedReal K3 = grat(k3, p), K4 = grat(k4, p);
  Rational eight = 8;

  switch (id) {
    case IneqId::Thm51Case1: {
      // a2 <= 2a1 case: c -> (1/16) a2^5 k^3, c/b^2 -> 6250 a2^2
      GuardedReal lhs = dec("0.09226", p) * (grat(6250, p) * V.pow_int(2)).rootn(4);
      GuardedReal n1 = dec("1.050425e13", p) * V.pow_int(8) * K3;
      GuardedReal n2 = dec("0.006417", p) * V.pow_int(6) * K3;
      GuardedReal d1 = grat(Rational(1, 16), p) * V.pow_int(6) * K4;
      GuardedReal d2 = dec("0.001053125", p) * V.pow_int(2) * K3;
      return quotient_compare(lhs, n1, n2, d1, d2, eight, p);
    }
    case IneqId::Thm51Case2: {
      // c >= 0.25 a2^2 b^3 case: c -> (1/4) a2^5 k^3, c/b^2 -> 25000 a2^2.
      // sqrt(2) factors kept exact; the rounded forms shift the crossing.
      GuardedReal s2 = grat(2, p).sqrt();
      GuardedReal lhs = dec("0.09226", p) * (grat(25000, p) * V.pow_int(2)).rootn(4);
      GuardedReal n1 = dec(consts::kNUpperOuter, p) * s2 * grat(Rational(1, 4), p) *
                       V.pow_int(8) * K3;
      GuardedReal n2 = dec(consts::kNUpperMid, p) * s2 * grat(Rational(1, 4), p) *
                       V.pow_int(5) * K3;
      GuardedReal d1 = grat(Rational(1, 4), p) * V.pow_int(6) * K4;
      GuardedReal d2 = dec("0.001053125", p) * V * K3;
      return quotient_compare(lhs, n1, n2, d1, d2, eight, p);
    }
    case IneqId::Prop4a1: {
      // 2a1 < a2 <= 4a1 case: c -> (1/64) a2^5 k^3, c/b^2 -> 1562.5 a2^2
      GuardedReal c64 = grat(Rational(1, 64), p);
      GuardedReal lhs = dec("0.09226", p) * (dec("1562.5", p) * V.pow_int(2)).rootn(4);
      GuardedReal n1 = dec("1.02921e14", p) * c64 * V.pow_int(8) * K3;
      GuardedReal n2 = dec("0.29039", p) * c64 * V.pow_int(5) * K3;
      GuardedReal d1 = c64 * V.pow_int(6) * K4;
      GuardedReal d2 = dec("0.002496", p) * c64 * V.pow_int(2) * K3;
      return quotient_compare(lhs, n1, n2, d1, d2, eight, p);
    }
    case IneqId::A2_01Case1: {
      // a2 <= 0.01 a1^2 branch, b >= a1^2 case; variable a1; c -> 0.25 a1^8
      GuardedReal q4 = grat(Rational(1, 4), p);
      GuardedReal lhs = dec("0.09226", p) * q4.rootn(4) * V;
      GuardedReal n1 = dec("1.6807e9", p) * q4 * V.pow_ratio(27, 2);
      GuardedReal n2 = dec("0.00685", p) * q4 * V.pow_ratio(17, 2);
      GuardedReal d1 = q4 * V.pow_int(10);
      GuardedReal d2 = grat(Rational(421250, 4), p) * V;
      return quotient_compare(lhs, n1, n2, d1, d2, eight, p);
    }
    case IneqId::A2_01Case2: {
      // same branch, b < a1^2 case; variable b; 0.25 b^4 < c < 0.25 b^5
      GuardedReal lhs =
          dec("0.09226", p) * grat(Rational(1, 4), p).rootn(4) * V.sqrt();
      GuardedReal n1 = dec("2.101e13", p) * V.pow_int(8);
      GuardedReal n2 = dec("0.03425", p) * V.pow_int(5);
      GuardedReal d1 = grat(Rational(1, 4), p) * V.pow_int(5);
      GuardedReal d2 = dec("4.3125e6", p) / V.pow_int(3);
      return quotient_compare(lhs, n1, n2, d1, d2, eight, p);
    }
    case IneqId::A2_0251Case1: {
      // a2 <= 0.0251 a1^2 branch, b >= a1^2 case; variable a1; c -> 0.25 a1^8
      GuardedReal q4 = grat(Rational(1, 4), p);
      GuardedReal lhs = dec("0.09226", p) * q4.rootn(4) * V;
      GuardedReal n1 = dec("1.678e10", p) * q4 * V.pow_ratio(27, 2);
      GuardedReal n2 = dec("0.3286", p) * q4 * V.pow_ratio(15, 2);
      GuardedReal d1 = q4 * V.pow_int(10);
      GuardedReal d2 = grat(Rational(10613, 4), p) * V;
      return quotient_compare(lhs, n1, n2, d1, d2, eight, p);
    }
    case IneqId::A2_0251Case2: {
      GuardedReal lhs =
          dec("0.09226", p) * grat(Rational(1, 4), p).rootn(4) * V.sqrt();
      GuardedReal n1 = dec("2.101e13", p) * V.pow_int(8);
      GuardedReal n2 = dec("3.645", p) * V.pow_int(5);
      GuardedReal d1 = grat(Rational(1, 4), p) * V.pow_int(5);
      GuardedReal d2 = grat(272500, p) / V.pow_int(3);
      return quotient_compare(lhs, n1, n2, d1, d2, eight, p);
    }
    case IneqId::Sec6SmallA1: {
      // b >= a2^2 contradiction, a1 <= 159 case; variable b; c -> b^3
      GuardedReal lhs =
          dec("0.09226", p) * grat(Rational(1, 2), p).sqrt() * V.rootn(4);
      GuardedReal n1 = dec(consts::kNUpperOuter, p) * V.pow_ratio(9, 2);
      GuardedReal n2 = dec("0.0153", p) * V.pow_ratio(7, 2);
      GuardedReal d1 = V.pow_int(4);
      GuardedReal d2 = dec("0.0000115", p) * V.pow_int(3);
      return quotient_compare(lhs, n1, n2, d1, d2, eight, p);
    }
    case IneqId::Sec6LargeA1: {
      // b >= k a2^2 family, a1 >= 160 case; variable a2; c -> 6400 k^3 a2^6
      GuardedReal Kg = grat(k, p);
      GuardedReal lhs =
          dec("0.09226", p) * (grat(6400, p) * Kg).rootn(4) * V.sqrt();
      GuardedReal n1 = dec("2.7136e18", p) * K3 * V.pow_ratio(35, 4);
      GuardedReal n2 = dec("4599.392", p) * K3 * V.pow_ratio(23, 4);
      GuardedReal d1 = grat(6400, p) * K4 * V.pow_int(8);
      GuardedReal d2 = dec("4313.6", p) * K3 * V.pow_int(2);
      return quotient_compare(lhs, n1, n2, d1, d2, eight, p);
    }
    case IneqId::Lemma31Contradiction: {
      // b >= 8.4034e13 ... contradiction; variable a2; c -> 1.186e42 a2^6
      GuardedReal c6 = dec("1.186e42", p) * V.pow_int(6);
      GuardedReal lhs = dec("0.09226", p) * (dec("4.2e13", p) * V.pow_int(2)).rootn(4);
      GuardedReal n1 = dec("1.681e14", p) * V.pow_int(3) * c6;
      GuardedReal n2 = dec("0.102665", p) * V * c6;
      GuardedReal d1 = dec("2.376e14", p) * V.pow_int(2) * c6;
      GuardedReal d2 = dec("0.0042125", p) * c6 / V.pow_int(4);
      return quotient_compare(lhs, n1, n2, d1, d2, Rational(1), p);
    }
  }
  throw std::logic_error("eval_inequality: unregistered id");
}

bool inequality_holds(IneqId id, const BigInt& value, const Rational& k) {
  for (mpfr_prec_t p = GuardedReal::start_precision(); p <= GuardedReal::kMaxPrec; p *= 2) {
    switch (eval_inequality(id, value, k, p)) {
      case Tri::True:
        return true;
      case Tri::False:
        return false;
      case Tri::Undecided:
        break;
    }
  }
  throw UndecidedError("inequality_holds: undecided at max precision for " +
                       std::string(ineq_info(id).name));
}

namespace {

std::optional<BigInt> find_max_satisfying(const std::function<bool(const BigInt&)>& pred,
                                          const BigInt& lo, const BigInt& hi) {
  // exponential bracket
  BigInt x = lo;
  while (x <= hi && !pred(x)) x *= 2;
  if (x > hi) return std::nullopt;
  BigInt last_true = x;
  x *= 2;
  while (x <= hi && pred(x)) {
    last_true = x;
    x *= 2;
  }
  if (x > hi && pred(hi)) return hi;  // saturated at the search cap
  BigInt first_false = x > hi ? hi : x;
  // bisect down to adjacent points
  while (first_false - last_true > 1) {
    BigInt mid = (last_true + first_false) / 2;
    if (pred(mid))
      last_true = mid;
    else
      first_false = mid;
  }
  // linear window against non-monotone wobble near the boundary
  BigInt best = last_true;
  BigInt probe = best + 1;
  BigInt window_end = best + 1000;
  while (probe <= window_end && probe <= hi) {
    if (pred(probe)) {
      best = probe;
      window_end = probe + 1000;
    }
    ++probe;
  }
  return best;
}

}  // namespace

std::optional<BigInt> max_a2_satisfying(IneqId id, const Rational& k) {
  const IneqInfo& info = ineq_info(id);
  return find_max_satisfying(
      [&](const BigInt& v) { return inequality_holds(id, v, k); }, 3, info.search_limit);
}

std::vector<BigInt> iterate_a2_bound(IneqId id) {
  if (!ineq_info(id).iterable)
    throw std::domain_error("iterate_a2_bound: inequality does not take the k refinement");
  std::vector<BigInt> bounds;
  auto first = max_a2_satisfying(id, 1);
  if (!first) return bounds;
  bounds.push_back(*first);
  for (int i = 0; i < 64; ++i) {
    Rational k(BigInt(100000), bounds.back());
    k.canonicalize();
    auto next = max_a2_satisfying(id, k);
    if (!next) break;
    if (*next == bounds.back()) break;  // fixpoint
    bounds.push_back(*next);
  }
  return bounds;
}

MBoundResult solve_m_bound() {
  // largest m with m / (ln(38.92 (m+1)) ln^2 m) < 2.7717e16
  Rational rhs = rational_from_decimal(consts::kMBoundRhs);
  auto pred = [&](const BigInt& m) -> bool {
    if (m < 2) return true;
    for (mpfr_prec_t p = GuardedReal::start_precision(); p <= GuardedReal::kMaxPrec; p *= 2) {
      GuardedReal gm = gint(m, p);
      GuardedReal t1 = (dec(consts::kMBoundInner, p) * gint(m + 1, p)).ln();
      GuardedReal t2 = gm.ln().pow_int(2);
      GuardedReal lhs = gm / (t1 * t2);
      Cmp c = lhs.compare_rational(rhs);
      if (c == Cmp::Less) return true;
      if (c == Cmp::Greater) return false;
    }
    throw UndecidedError("solve_m_bound: undecided at max precision");
  };
  auto m_max = find_max_satisfying(pred, 2, pow10(30));
  assert(m_max.has_value());

  // c bound: floor(100 log10 m_max)
  long c_exp = 0;
  for (mpfr_prec_t p = GuardedReal::kDefaultPrec;; p *= 2) {
    if (p > GuardedReal::kMaxPrec)
      throw UndecidedError("solve_m_bound: c exponent undecided");
    GuardedReal g = grat(100, p) * gint(*m_max, p).ln() / grat(10, p).ln();
    long e = static_cast<long>(g.lo_double());
    if (g.compare_rational(Rational(e)) == Cmp::Greater &&
        g.compare_rational(Rational(e + 1)) == Cmp::Less) {
      c_exp = e;
      break;
    }
  }

  // d bound: log10 v < log10(1.00317) + (0.64 + 0.7 m) log10 c, d < v^2
  int d_exp = 0;
  for (mpfr_prec_t p = GuardedReal::kDefaultPrec;; p *= 2) {
    if (p > GuardedReal::kMaxPrec)
      throw UndecidedError("solve_m_bound: d exponent undecided");
    GuardedReal log10c = grat(c_exp, p);
    GuardedReal lv = dec(consts::kVmGrowth, p).ln() / grat(10, p).ln() +
                     (dec("0.64", p) + dec("0.7", p) * gint(*m_max, p)) * log10c;
    GuardedReal g = (grat(2, p) * lv).ln() / grat(10, p).ln();  // log10 log10 d bound
    long e = static_cast<long>(g.lo_double());
    if (g.compare_rational(Rational(e)) == Cmp::Greater &&
        g.compare_rational(Rational(e + 1)) == Cmp::Less) {
      d_exp = static_cast<int>(e) + 1;  // ceil
      break;
    }
  }
  return {*m_max, c_exp, d_exp};
}

BigInt sec5_c_upper(Sec5Branch branch) {
  // Rewritten index inequality in c alone: the branch's a1 range enters as
  // a1_max in the numerator logs and a1_min (with b = max(1e5, a1_min^2))
  // in the denominator logs; n > 0.2465 c^(1/12) on the left.
  const bool first = branch == Sec5Branch::A2Above001;
  const long a1_hi = first ? 552 : 682;
  const long a1_lo = first ? 401 : 160;
  const char* outer = first ? "1.6807e9" : "1.678e10";
  const char* mid = first ? "0.00685" : "0.3286";
  const char* inner = first ? "421250" : "10613";
  // b in the denominator's first log pairs with the branch's minimal a1
  const BigInt b_val = BigInt(a1_lo) * a1_lo;

  Rational inner_q = rational_from_decimal(inner) * Rational(1, ipow(BigInt(a1_lo), 7));
  BigInt a1h5 = ipow(BigInt(a1_hi), 5);

  auto pred = [&](const BigInt& c) -> bool {
    if (c < 2) return false;
    for (mpfr_prec_t p = GuardedReal::start_precision(); p <= GuardedReal::kMaxPrec; p *= 2) {
      GuardedReal gc = gint(c, p);
      GuardedReal sqrt_a1hi = grat(a1_hi, p).sqrt();
      GuardedReal lhs = dec(consts::kC12Lower, p) * gc.rootn(12);
      GuardedReal n1 = dec(outer, p) * gint(a1h5, p) * sqrt_a1hi * gc;  // a1_hi^(11/2)
      GuardedReal n2 = dec(mid, p) * sqrt_a1hi * gc;
      GuardedReal d1 = gint(b_val, p) * gc;
      GuardedReal d2 = grat(inner_q, p) * gc;
      Tri t = quotient_compare(lhs, n1, n2, d1, d2, 8, p);
      if (t == Tri::True) return true;
      if (t == Tri::False) return false;
    }
    throw UndecidedError("sec5_c_upper: undecided at max precision");
  };
  auto best = find_max_satisfying(pred, 3, pow10(40));
  assert(best.has_value());
  return *best;
}

std::optional<BigInt> per_pair_b_ceiling(const BigInt& a1, const BigInt& a2,
                                         const BigInt& cap) {
  if (!(0 < a1 && a1 < a2)) throw HypothesisError("per_pair_b_ceiling: need 0 < a1 < a2");
  BigInt ap = a2 - a1 > a1 ? BigInt(4 * (a2 - a1)) : BigInt(4 * a1);
  Rational outer = rational_from_decimal(consts::kNUpperOuter) *
                   Rational(a2 * a2, 1);  // * sqrt(a1 a1') * c
  Rational mid = rational_from_decimal(consts::kNUpperMid) * Rational(1, a2 - a1);
  Rational inner = rational_from_decimal(consts::kNUpperInner) *
                   Rational(a1, ap * a2 * (a2 - a1) * (a2 - a1));
  Rational nlow = rational_from_decimal(consts::kNLowerOdd);
  Rational a1q(a1 * a1, 4);

  auto pred = [&](const BigInt& b) -> bool {
    Rational csub = a1q * ipow(b, 3);  // c -> a1^2 b^3 / 4
    for (mpfr_prec_t p = GuardedReal::start_precision(); p <= GuardedReal::kMaxPrec; p *= 2) {
      GuardedReal gc = grat(csub, p);
      GuardedReal lhs = grat(nlow, p) * (grat(a1q, p) * gint(b, p)).rootn(4);
      GuardedReal n1 =
          grat(outer, p) * gint(a1, p).sqrt() * gint(ap, p).sqrt() * gc;
      GuardedReal n2 = grat(mid, p) * gint(a1, p).sqrt() * gint(a2, p).sqrt() * gc;
      GuardedReal d1 = gint(b, p) * gc;
      GuardedReal d2 = grat(inner, p) * gc;
      Tri t = quotient_compare(lhs, n1, n2, d1, d2, 8, p);
      if (t == Tri::True) return true;
      if (t == Tri::False) return false;
    }
    throw UndecidedError("per_pair_b_ceiling: undecided at max precision");
  };
  return find_max_satisfying(pred, 3, cap);
}

ApproximationGap approximation_gap(const BigInt& a1, const BigInt& a2, const BigInt& c,
                                   const BigInt& z, const BigInt& x1, const BigInt& x2,
                                   mpfr_prec_t prec) {
  if (z == 0) throw std::domain_error("approximation_gap: z must be nonzero");
  if (a1 * z * z - c * x1 * x1 != 4 * (a1 - c))
    throw std::domain_error("approximation_gap: (z, x1) does not solve the first equation");
  if (a2 * z * z - c * x2 * x2 != 4 * (a2 - c))
    throw std::domain_error("approximation_gap: (z, x2) does not solve the second equation");
  auto s1 = is_perfect_square(a1 * c + 4);
  auto s2 = is_perfect_square(a2 * c + 4);
  if (!s1 || !s2)
    throw std::domain_error("approximation_gap: a_i c + 4 must be perfect squares");

  BigInt n = a1 * a2 * c;
  BigInt zz = z < 0 ? BigInt(-z) : z;
  Rational bound_q(2 * c, a1 * zz * zz);
  bound_q.canonicalize();
  Rational p1(*s1 * a2 * x1, a1 * a2 * zz);
  Rational p2(*s2 * a1 * x2, a1 * a2 * zz);
  p1.canonicalize();
  p2.canonicalize();
  Rational t1(n + 4 * a2, n), t2(n + 4 * a1, n);
  t1.canonicalize();
  t2.canonicalize();

  for (mpfr_prec_t p = prec; p <= GuardedReal::kMaxPrec; p *= 2) {
    GuardedReal gap1 = (grat(t1, p).sqrt() - grat(p1, p)).abs();
    GuardedReal gap2 = (grat(t2, p).sqrt() - grat(p2, p)).abs();
    GuardedReal bound = grat(bound_q, p);
    Cmp c1 = compare(gap1, bound);
    Cmp c2 = compare(gap2, bound);
    if (c1 != Cmp::Undecided && c2 != Cmp::Undecided) {
      return {gap1, gap2, bound, c1 == Cmp::Less && c2 == Cmp::Less};
    }
  }
  throw UndecidedError("approximation_gap: bound comparison undecided at max precision");
}

}  // namespace dquad
