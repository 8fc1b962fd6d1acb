#include "dquad/sequences.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace dquad {

RecurrenceSpec RecurrenceSpec::make(const BigInt& coeff, const BigInt& z0, const BigInt& c,
                                    const BigInt& x0, SeqKind kind) {
  BigInt twice = coeff * z0 + c * x0;
  if (mpz_odd_p(twice.get_mpz_t()))
    throw std::domain_error("RecurrenceSpec: half-sum initial term is not integral");
  return {coeff, z0, twice / 2, kind};
}

std::vector<BigInt> build_sequence(const RecurrenceSpec& spec, int count) {
  if (count < 1) throw std::domain_error("build_sequence: count must be >= 1");
  std::vector<BigInt> terms;
  terms.reserve(count);
  terms.push_back(spec.z0);
  if (count == 1) return terms;
  terms.push_back(spec.first);
  for (int i = 2; i < count; ++i)
    terms.push_back(spec.coeff * terms[i - 1] - terms[i - 2]);
  return terms;
}

std::vector<InitCase> admissible_inits(const BigInt& a, const BigInt& b, const BigInt& c) {
  TripleContext ctx(a, b, c);  // validates the triple
  std::vector<InitCase> out;
  BigInt two = 2;
  out.push_back({ParityCase::EvenEven, two, two, two, two});
  out.push_back({ParityCase::EvenEven, -two, -two, two, two});
  out.push_back({ParityCase::OddOdd, ctx.t(), ctx.s(), ctx.r(), ctx.r()});
  out.push_back({ParityCase::OddOdd, -ctx.t(), -ctx.s(), ctx.r(), ctx.r()});
  return out;
}

std::vector<Intersection> find_intersections(const BigInt& a, const BigInt& b, const BigInt& c,
                                             int m_max, int n_max) {
  if (m_max < 0 || n_max < 0) throw std::domain_error("find_intersections: negative bound");
  TripleContext ctx(a, b, c);

  std::set<std::tuple<int, int, BigInt>> seen;
  std::vector<Intersection> out;

  for (const InitCase& init : admissible_inits(a, b, c)) {
    // v from eq. in a (coeff s), w from eq. in b (coeff t)
    auto vspec = RecurrenceSpec::make(ctx.s(), init.z0, ctx.c(), init.x0, SeqKind::V);
    auto wspec = RecurrenceSpec::make(ctx.t(), init.z1, ctx.c(), init.y1, SeqKind::W);
    auto v = build_sequence(vspec, m_max + 1);
    auto w = build_sequence(wspec, n_max + 1);

    int want = init.id == ParityCase::EvenEven ? 0 : 1;
    std::vector<std::pair<BigInt, int>> vs, ws;  // (term, index), parity-filtered
    for (int m = want; m <= m_max; m += 2) vs.emplace_back(v[m], m);
    for (int n = want; n <= n_max; n += 2) ws.emplace_back(w[n], n);
    // terms are strictly increasing; merge-scan the two streams
    for (size_t i = 1; i < vs.size(); ++i) assert(vs[i].first > vs[i - 1].first);
    for (size_t i = 1; i < ws.size(); ++i) assert(ws[i].first > ws[i - 1].first);

    size_t i = 0, j = 0;
    while (i < vs.size() && j < ws.size()) {
      if (vs[i].first < ws[j].first) {
        ++i;
      } else if (ws[j].first < vs[i].first) {
        ++j;
      } else {
        const BigInt& z = vs[i].first;
        if (z > 0) {
          BigInt zz = z * z - 4;
          if (mpz_divisible_p(zz.get_mpz_t(), ctx.c().get_mpz_t())) {
            auto key = std::make_tuple(vs[i].second, ws[j].second, z);
            if (seen.insert(key).second) {
              out.push_back({vs[i].second, ws[j].second, z, zz / ctx.c()});
            }
          }
        }
        ++i;
        ++j;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Intersection& x, const Intersection& y) {
    if (x.z != y.z) return x.z < y.z;
    if (x.m != y.m) return x.m < y.m;
    return x.n < y.n;
  });
  return out;
}

}  // namespace dquad
