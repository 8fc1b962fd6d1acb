#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dquad/sequences.hpp"
#include "dquad/tuples.hpp"

using namespace dquad;

TEST_CASE("build_sequence examples for (1,5,12)") {
  // V sequence (coeff s = 4) from z0 = -2, x0 = 2
  auto vspec = RecurrenceSpec::make(4, -2, 12, 2, SeqKind::V);
  auto v = build_sequence(vspec, 4);
  CHECK(v == std::vector<BigInt>{-2, 8, 34, 128});

  // W sequence (coeff t = 8) from z1 = -2, y1 = 2
  auto wspec = RecurrenceSpec::make(8, -2, 12, 2, SeqKind::W);
  auto w = build_sequence(wspec, 4);
  CHECK(w == std::vector<BigInt>{-2, 4, 34, 268});

  CHECK(build_sequence(vspec, 1) == std::vector<BigInt>{-2});
  CHECK_THROWS_AS(build_sequence(vspec, 0), std::domain_error);
}

TEST_CASE("half-sum divisibility is enforced") {
  // coeff*z0 + c*x0 odd => rejected
  CHECK_THROWS_AS(RecurrenceSpec::make(3, 1, 5, 2, SeqKind::V), std::domain_error);
}

TEST_CASE("admissible_inits for (1,5,12)") {
  auto inits = admissible_inits(1, 5, 12);
  REQUIRE(inits.size() == 4);
  int even = 0, odd = 0;
  for (const auto& ic : inits) {
    CHECK(ic.z0 * ic.z1 > 0);
    if (ic.id == ParityCase::EvenEven) {
      ++even;
      CHECK(ic.x0 == 2);
      CHECK(ic.y1 == 2);
      BigInt az0 = ic.z0 < 0 ? BigInt(-ic.z0) : ic.z0;
      CHECK(az0 == 2);
    } else {
      ++odd;
      CHECK(ic.x0 == 3);  // r
      CHECK(ic.y1 == 3);
      BigInt az0 = ic.z0 < 0 ? BigInt(-ic.z0) : ic.z0;
      BigInt az1 = ic.z1 < 0 ? BigInt(-ic.z1) : ic.z1;
      CHECK(az0 == 8);  // t
      CHECK(az1 == 4);  // s
    }
  }
  CHECK(even == 2);
  CHECK(odd == 2);
  CHECK_THROWS_AS(admissible_inits(1, 2, 3), std::domain_error);
}

TEST_CASE("find_intersections recovers the regular extension") {
  auto hits = find_intersections(1, 5, 12, 4, 4);
  bool found22 = false;
  for (const auto& h : hits) {
    CHECK(h.m % 2 == h.n % 2);  // parity invariant
    if (h.m == 2 && h.n == 2 && h.z == 34) {
      found22 = true;
      CHECK(h.d == 96);
      CHECK(verify_tuple({1, 5, 12, h.d}, 4).ok);
    }
  }
  CHECK(found22);

  auto hits2 = find_intersections(2, 6, 16, 4, 4);
  bool found = false;
  for (const auto& h : hits2) {
    if (h.m == 2 && h.n == 2 && h.z == 62) {
      found = true;
      CHECK(h.d == 240);
    }
  }
  CHECK(found);
}

TEST_CASE("odd-parity inits expose the same extension at (1,1)") {
  // v1 = w1 = 34 from the case with |z0| = t, |z1| = s and positive signs
  auto hits = find_intersections(1, 5, 12, 1, 1);
  bool found11 = false;
  for (const auto& h : hits) {
    if (h.m == 1 && h.n == 1 && h.z == 34) found11 = true;
  }
  CHECK(found11);
}

TEST_CASE("sequence membership in the underlying Pellian equations") {
  BigInt a = 1, b = 5, c = 12;
  TripleContext ctx(a, b, c);
  for (const auto& ic : admissible_inits(a, b, c)) {
    auto v = build_sequence(RecurrenceSpec::make(ctx.s(), ic.z0, c, ic.x0, SeqKind::V), 8);
    for (const auto& z : v) {
      BigInt num = a * z * z - 4 * (a - c);
      REQUIRE(num % c == 0);
      CHECK(is_perfect_square(num / c).has_value());
    }
    auto w = build_sequence(RecurrenceSpec::make(ctx.t(), ic.z1, c, ic.y1, SeqKind::W), 8);
    for (const auto& z : w) {
      BigInt num = b * z * z - 4 * (b - c);
      REQUIRE(num % c == 0);
      CHECK(is_perfect_square(num / c).has_value());
    }
  }
}

TEST_CASE("monotonic growth") {
  auto v = build_sequence(RecurrenceSpec::make(4, -2, 12, 2, SeqKind::V), 12);
  for (size_t i = 2; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
}

TEST_CASE("regularity recovery across sampled triples") {
  // d_plus appears among intersections with m, n <= 2
  std::vector<std::array<long, 3>> triples = {
      {1, 5, 12}, {2, 6, 16}, {1, 12, 96}, {5, 12, 96}, {3, 4, 15}, {1, 21, 32}, {5, 12, 33}};
  for (const auto& [a, b, c] : triples) {
    TripleContext ctx(a, b, c);
    BigInt dp = d_plus(ctx);
    auto hits = find_intersections(a, b, c, 2, 2);
    bool has = false;
    for (const auto& h : hits) has = has || h.d == dp;
    CHECK_MESSAGE(has, "triple ", a, ",", b, ",", c);
  }
}
