#include "dquad/numerics.hpp"

#include <cctype>

namespace dquad {

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt: negative input");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());  // floor square root
  return r;
}

std::optional<BigInt> is_perfect_square(const BigInt& n) {
  if (n < 0) return std::nullopt;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  return isqrt(n);
}

BigInt pow10(unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational rational_from_decimal(std::string_view s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = (s[i] == '-');
    ++i;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("rational_from_decimal: two dots");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      throw std::invalid_argument("rational_from_decimal: bad character");
    }
  }
  if (!seen_digit) throw std::invalid_argument("rational_from_decimal: no digits");
  long expo = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = (s[i] == '-');
      ++i;
    }
    if (i == s.size()) throw std::invalid_argument("rational_from_decimal: empty exponent");
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("rational_from_decimal: bad exponent");
      expo = expo * 10 + (s[i] - '0');
    }
    if (eneg) expo = -expo;
  }
  BigInt mant(digits.empty() ? "0" : digits, 10);  // base fixed: leading zeros are not octal
  if (neg) mant = -mant;
  long net = expo - frac_len;  // value = mant * 10^net
  Rational q;
  if (net >= 0) {
    q = Rational(mant * pow10(static_cast<unsigned>(net)), 1);
  } else {
    q = Rational(mant, pow10(static_cast<unsigned>(-net)));
  }
  q.canonicalize();
  return q;
}

}  // namespace dquad
