#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "dquad/pell.hpp"

using namespace dquad;

namespace {

// test-only oracle: all y <= y_max with N + D y^2 a perfect square (u64 range)
std::set<long> brute_force_y(long D, long N, long y_max) {
  std::set<long> out;
  for (long y = 0; y <= y_max; ++y) {
    long long t = static_cast<long long>(D) * y * y + N;
    if (t < 0) continue;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(t)));
    while (r * r > t) --r;
    while ((r + 1) * (r + 1) <= t) ++r;
    if (r * r == t) out.insert(y);
  }
  return out;
}

bool is_square_long(long v) {
  if (v < 0) return false;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

}  // namespace

TEST_CASE("fundamental units") {
  auto u3 = fundamental_unit(3);
  CHECK(u3.x == 2);
  CHECK(u3.y == 1);
  auto u15 = fundamental_unit(15);
  CHECK(u15.x == 4);
  CHECK(u15.y == 1);
  auto u13 = fundamental_unit(13);
  CHECK(u13.x == 649);
  CHECK(u13.y == 180);
  auto u2 = fundamental_unit(2);
  CHECK(u2.x == 3);
  CHECK(u2.y == 2);
  CHECK_THROWS_AS(fundamental_unit(4), std::domain_error);
  CHECK_THROWS_AS(fundamental_unit(1), std::domain_error);
}

TEST_CASE("fundamental unit is minimal (brute force)") {
  for (long D : {2, 3, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15, 17, 19, 21, 29, 31, 46}) {
    auto u = fundamental_unit(D);
    CHECK(u.x * u.x - D * u.y * u.y == 1);
    // no smaller positive y works
    for (BigInt y = 1; y < u.y; ++y) {
      CHECK(!is_perfect_square(D * y * y + 1).has_value());
    }
  }
}

TEST_CASE("solution classes") {
  auto cls = solution_classes({3, -8});
  REQUIRE(cls.size() == 1);  // ambiguous class merged
  CHECK(cls[0].x0 == 2);
  CHECK(cls[0].y0 == 2);

  auto trivial = solution_classes({3, 1});
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].x0 == 1);
  CHECK(trivial[0].y0 == 0);

  auto c15 = solution_classes({15, -11});
  bool has21 = false;
  for (const auto& c : c15) has21 = has21 || (c.x0 == 2 && c.y0 == 1);
  CHECK(has21);
  CHECK(c15.size() == 2);  // (2,1) and (-2,1) lie in different orbits

  CHECK_THROWS_AS(solution_classes({4, 5}), std::domain_error);
}

TEST_CASE("enumerate_solutions examples") {
  auto s = enumerate_solutions({3, -8}, 100);
  REQUIRE(s.size() == 4);
  long expect_y[4] = {2, 6, 22, 82};
  for (int i = 0; i < 4; ++i) {
    CHECK(s[static_cast<size_t>(i)].second == expect_y[i]);
    const auto& [x, y] = s[static_cast<size_t>(i)];
    CHECK(x * x - 3 * y * y == -8);
  }

  CHECK(enumerate_solutions({3, -8}, 1).empty());

  auto t = enumerate_solutions({15, 1}, 10);
  REQUIRE(t.size() == 3);
  CHECK(t[0] == std::pair<BigInt, BigInt>(1, 0));
  CHECK(t[1] == std::pair<BigInt, BigInt>(4, 1));
  CHECK(t[2] == std::pair<BigInt, BigInt>(31, 8));
}

TEST_CASE("class closure under the unit") {
  PellProblem p{3, -8};
  auto u = fundamental_unit(p.D);
  auto sols = enumerate_solutions(p, 10000);
  std::set<BigInt> ys;
  for (const auto& [x, y] : sols) ys.insert(y);
  for (const auto& [x, y] : sols) {
    for (const BigInt& xs : {x, BigInt(-x)}) {
      BigInt ny = xs * u.y + y * u.x;
      if (ny < 0) ny = -ny;
      if (ny <= 10000) CHECK(ys.count(ny) == 1);
    }
  }
}

TEST_CASE("completeness against brute force, full small grid") {
  for (long D = 2; D <= 50; ++D) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(D)));
    if (r * r == D) continue;
    for (long N = -100; N <= 100; ++N) {
      if (N == 0) continue;
      auto oracle = brute_force_y(D, N, 400);
      auto got = enumerate_solutions({D, N}, 400);
      REQUIRE_MESSAGE(got.size() == oracle.size(), "D=", D, " N=", N);
      for (const auto& [x, y] : got) {
        CHECK(oracle.count(y.get_si()) == 1);
        CHECK(x * x - D * y * y == N);
      }
    }
  }
}

TEST_CASE("completeness spot checks with a large window") {
  auto oracle = brute_force_y(3, -8, 1000000);
  auto got = enumerate_solutions({3, -8}, 1000000);
  REQUIRE(got.size() == oracle.size());
  for (const auto& [x, y] : got) CHECK(oracle.count(y.get_si()) == 1);

  auto oracle2 = brute_force_y(19, 45, 500000);
  auto got2 = enumerate_solutions({19, 45}, 500000);
  REQUIRE(got2.size() == oracle2.size());
}

TEST_CASE("solve_square_d") {
  auto s12 = solve_square_d(1, 12);
  REQUIRE(s12.size() == 1);
  CHECK(s12[0] == std::pair<BigInt, BigInt>(4, 2));

  auto s1 = solve_square_d(1, 1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0] == std::pair<BigInt, BigInt>(1, 0));

  auto s32 = solve_square_d(2, 32);
  REQUIRE(s32.size() == 1);
  CHECK(s32[0] == std::pair<BigInt, BigInt>(6, 1));

  CHECK_THROWS_AS(solve_square_d(2, 0), std::domain_error);
}

TEST_CASE("solve_square_d completeness against brute force") {
  for (long k = 1; k <= 5; ++k) {
    for (long N = -200; N <= 200; ++N) {
      if (N == 0) continue;
      auto got = solve_square_d(k, N);
      std::set<std::pair<long, long>> oracle;
      for (long y = 0; y <= 2 * std::abs(N); ++y) {
        long v = k * k * y * y + N;
        if (v >= 0 && is_square_long(v))
          oracle.insert({static_cast<long>(std::sqrt(static_cast<double>(v)) + 0.5), y});
      }
      REQUIRE_MESSAGE(got.size() == oracle.size(), "k=", k, " N=", N);
      for (const auto& [x, y] : got) {
        CHECK(oracle.count({x.get_si(), y.get_si()}) == 1);
        CHECK(x * x - k * k * y * y == N);
      }
    }
  }
}

TEST_CASE("pair_extension_values examples") {
  auto v = pair_extension_values(1, 3, 30, 40);
  REQUIRE(v.size() == 1);
  CHECK(v[0].value == 32);
  CHECK(v[0].r1 == 6);
  CHECK(v[0].r2 == 10);

  auto w = pair_extension_values(1, 3, BigInt(100000), pow10(7));
  REQUIRE(w.size() == 1);
  CHECK(w[0].value == 1304160);
  CHECK(w[0].r1 == 1142);
  CHECK(w[0].r2 == 1978);

  CHECK(pair_extension_values(2, 9, 1, 10).empty());

  // square a1 a2 route: the two-squares condition for {1, 4} never holds
  CHECK(pair_extension_values(1, 4, 1, pow10(6)).empty());

  CHECK_THROWS_AS(pair_extension_values(3, 2, 1, 10), std::domain_error);
}

TEST_CASE("pair_extension_values recomputation property") {
  for (auto [a1, a2] : std::vector<std::pair<long, long>>{{1, 3}, {1, 5}, {2, 4}, {3, 8}, {5, 12}}) {
    auto vals = pair_extension_values(a1, a2, 1, pow10(6));
    for (const auto& ev : vals) {
      auto r1 = is_perfect_square(a1 * ev.value + 4);
      auto r2 = is_perfect_square(a2 * ev.value + 4);
      REQUIRE(r1.has_value());
      REQUIRE(r2.has_value());
      CHECK(*r1 == ev.r1);
      CHECK(*r2 == ev.r2);
    }
    // against a direct scan
    long count = 0;
    for (long x = 1; x <= 100000; ++x) {
      if (is_square_long(a1 * x + 4) && is_square_long(a2 * x + 4)) ++count;
    }
    long got = 0;
    for (const auto& ev : vals)
      if (ev.value <= 100000) ++got;
    CHECK(count == got);
  }
}
