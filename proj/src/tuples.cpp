#include "dquad/tuples.hpp"

#include <algorithm>
#include <cassert>

namespace dquad {

VerifyResult verify_tuple(const std::vector<BigInt>& candidate, const BigInt& n) {
  for (const auto& e : candidate) {
    if (e <= 0) throw std::invalid_argument("verify_tuple: elements must be positive");
  }
  std::vector<BigInt> sorted = candidate;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("verify_tuple: elements must be distinct");

  VerifyResult res;
  WitnessMap wit;
  for (size_t i = 0; i < candidate.size(); ++i) {
    for (size_t j = i + 1; j < candidate.size(); ++j) {
      auto root = is_perfect_square(candidate[i] * candidate[j] + n);
      if (!root) return res;  // ok = false
      wit.roots.push_back({{i, j}, *root});
    }
  }
  res.ok = true;
  res.witnesses = std::move(wit);
  return res;
}

TripleContext::TripleContext(const BigInt& a, const BigInt& b, const BigInt& c) {
  BigInt v[3] = {a, b, c};
  std::sort(v, v + 3);
  a_ = v[0];
  b_ = v[1];
  c_ = v[2];
  auto r = is_perfect_square(a_ * b_ + 4);
  auto s = is_perfect_square(a_ * c_ + 4);
  auto t = is_perfect_square(b_ * c_ + 4);
  if (a_ <= 0 || a_ == b_ || b_ == c_ || !r || !s || !t)
    throw std::domain_error("TripleContext: not a D(4)-triple");
  r_ = *r;
  s_ = *s;
  t_ = *t;
}

BigInt d_plus(const TripleContext& ctx) {
  BigInt num = ctx.a() * ctx.b() * ctx.c() + ctx.r() * ctx.s() * ctx.t();
  assert(mpz_even_p(num.get_mpz_t()));
  return ctx.a() + ctx.b() + ctx.c() + num / 2;
}

BigInt d_minus(const TripleContext& ctx) {
  BigInt num = ctx.a() * ctx.b() * ctx.c() - ctx.r() * ctx.s() * ctx.t();
  assert(mpz_even_p(num.get_mpz_t()));
  BigInt d = ctx.a() + ctx.b() + ctx.c() + num / 2;
  assert(d >= 0);
  return d;
}

QuadrupleClass classify_quadruple(const BigInt& a, const BigInt& b, const BigInt& c,
                                  const BigInt& d) {
  if (!(a < b && b < c && c < d))
    throw std::domain_error("classify_quadruple: need a < b < c < d");
  if (!verify_tuple({a, b, c, d}, 4).ok)
    throw std::domain_error("classify_quadruple: not a D(4)-quadruple");
  return d == d_plus(TripleContext(a, b, c)) ? QuadrupleClass::Regular
                                             : QuadrupleClass::Irregular;
}

}  // namespace dquad
