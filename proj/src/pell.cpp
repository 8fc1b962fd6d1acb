#include "dquad/pell.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace dquad {

namespace {

bool divides(const BigInt& d, const BigInt& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Same solution class of x^2 - D y^2 = N iff (x1 x2 - D y1 y2) and
// (x1 y2 - x2 y1) are both divisible by N.
bool same_class(const BigInt& x1, const BigInt& y1, const BigInt& x2, const BigInt& y2,
                const BigInt& D, const BigInt& N) {
  return divides(N, x1 * x2 - D * y1 * y2) && divides(N, x1 * y2 - x2 * y1);
}

}  // namespace

FundamentalUnit fundamental_unit(const BigInt& D) {
  if (D < 2) throw std::domain_error("fundamental_unit: D must be >= 2");
  BigInt a0 = isqrt(D);
  if (a0 * a0 == D) throw std::domain_error("fundamental_unit: D is a perfect square");

  // Continued fraction of sqrt(D) with the (P, Q) recursion; convergents
  // h/k tested against h^2 - D k^2 = 1.
  BigInt P = 0, Q = 1, a = a0;
  BigInt h_prev = 1, h = a0, k_prev = 0, k = 1;
  while (true) {
    if (h * h - D * k * k == 1) return {h, k};
    P = a * Q - P;
    Q = (D - P * P) / Q;
    a = (a0 + P) / Q;
    BigInt h_next = a * h + h_prev;
    BigInt k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
}

namespace {

// floor((P + sqrt(D)) / Q) for nonsquare D, exact integer arithmetic
BigInt cf_partial_quotient(const BigInt& P, const BigInt& Q, const BigInt& sqrtD) {
  BigInt num = P + sqrtD;
  if (Q < 0) num += 1;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
  return q;
}

// Reduce a solution to the minimal |y| element of its orbit, y normalized >= 0.
std::pair<BigInt, BigInt> reduce_to_class_minimum(BigInt x, BigInt y, const BigInt& D,
                                                  const FundamentalUnit& u) {
  if (y < 0) {
    y = -y;
    x = -x;
  }
  for (;;) {
    BigInt xd = x * u.x - D * y * u.y;
    BigInt yd = y * u.x - x * u.y;
    BigInt xu = x * u.x + D * y * u.y;
    BigInt yu = x * u.y + y * u.x;
    BigInt ad = ::abs(yd), au = ::abs(yu);
    if (ad < y && ad <= au) {
      x = yd < 0 ? BigInt(-xd) : xd;
      y = ad;
    } else if (au < y) {
      x = yu < 0 ? BigInt(-xu) : xu;
      y = au;
    } else {
      break;
    }
  }
  return {x, y};
}

}  // namespace

std::vector<PellClass> solution_classes(const PellProblem& p) {
  const BigInt& D = p.D;
  const BigInt& N = p.N;
  if (N == 0) throw std::domain_error("solution_classes: N must be nonzero");
  BigInt sqrtD = isqrt(D);
  if (sqrtD * sqrtD == D) throw std::domain_error("solution_classes: D is a perfect square");

  FundamentalUnit u = fundamental_unit(D);
  BigInt absN = ::abs(N);
  std::vector<std::pair<BigInt, BigInt>> cands;  // (x signed, y >= 0)

  if (auto r = is_perfect_square(N)) cands.emplace_back(*r, 0);

  // Lagrange-Matthews: primitive solutions of x^2 - D y^2 = N/f^2 arise as
  // convergents of (z + sqrt(D)) / |m| for square roots z of D mod |m|.
  // Every candidate convergent's value is checked directly.
  for (BigInt f = 1; f * f <= absN; ++f) {
    if (!divides(f * f, N)) continue;
    BigInt m = N / (f * f);
    BigInt M = ::abs(m);
    for (BigInt zr = 0; zr < M; ++zr) {
      BigInt t = (zr * zr - D) % M;
      if (t != 0) continue;
      BigInt z = 2 * zr > M ? BigInt(zr - M) : zr;

      BigInt P = z, Q = M;
      BigInt g2 = -z, g1 = M;  // G_{-2}, G_{-1}
      BigInt b2 = 1, b1 = 0;   // B_{-2}, B_{-1}
      std::set<std::pair<BigInt, BigInt>> seen;
      long extra = -1;  // once the (P,Q) cycle closes, run one more lap
      for (long i = 0; i < 200000; ++i) {
        if (!seen.insert({P, Q}).second && extra < 0)
          extra = static_cast<long>(seen.size()) + 2;
        if (extra >= 0 && extra-- == 0) break;
        BigInt a = cf_partial_quotient(P, Q, sqrtD);
        BigInt G = a * g1 + g2;
        BigInt B = a * b1 + b2;
        if (G * G - D * B * B == m) cands.emplace_back(f * G, f * B);
        g2 = g1;
        g1 = G;
        b2 = b1;
        b1 = B;
        P = a * Q - P;
        Q = (D - P * P) / Q;
      }
    }
  }

  // canonicalize: minimal |y| in each orbit, ambiguous classes merged to x >= 0
  std::vector<PellClass> reps;
  std::vector<std::pair<BigInt, BigInt>> minima;
  for (const auto& [cx, cy] : cands) {
    auto [x, y] = reduce_to_class_minimum(cx, cy, D, u);
    minima.emplace_back(x, y);
    if (x != 0) minima.emplace_back(-x, y);  // conjugate orbit candidate
  }
  std::sort(minima.begin(), minima.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return ::abs(a.first) == ::abs(b.first) ? a.first > b.first : ::abs(a.first) < ::abs(b.first);
  });
  for (const auto& [x, y] : minima) {
    if (x * x - D * y * y != N) continue;
    bool known = false;
    for (const auto& r : reps) {
      if (same_class(x, y, r.x0, r.y0, D, N)) {
        known = true;
        break;
      }
    }
    if (!known) reps.push_back({x, y});
  }
  return reps;
}

std::vector<std::pair<BigInt, BigInt>> enumerate_solutions(const PellProblem& p,
                                                           const BigInt& y_max) {
  BigInt root = isqrt(p.D);
  if (root * root == p.D) throw std::domain_error("enumerate_solutions: D is a perfect square");
  std::vector<std::pair<BigInt, BigInt>> out;
  if (y_max < 0) return out;

  FundamentalUnit u = fundamental_unit(p.D);
  std::set<BigInt> ys;

  auto visit = [&](BigInt x, BigInt y) {
    if (y < 0) {
      y = -y;
      x = -x;
    }
    if (y <= y_max) ys.insert(y);
  };

  for (const auto& rep : solution_classes(p)) {
    // orbit walk in both directions; |y| grows monotonically once past the
    // class minimum, so a couple of grace steps suffice
    for (int dir = 0; dir < 2; ++dir) {
      BigInt x = rep.x0, y = rep.y0;
      int grace = 0;
      for (int step = 0; step < 100000; ++step) {
        visit(x, y);
        BigInt nx, ny;
        if (dir == 0) {
          nx = x * u.x + p.D * y * u.y;
          ny = x * u.y + y * u.x;
        } else {
          nx = x * u.x - p.D * y * u.y;
          ny = y * u.x - x * u.y;
        }
        x = nx;
        y = ny;
        if (::abs(y) > y_max) {
          if (++grace > 2) break;
        } else {
          grace = 0;
        }
      }
    }
  }
  for (const BigInt& y : ys) {
    BigInt t = p.N + p.D * y * y;
    auto x = is_perfect_square(t);
    assert(x.has_value());
    out.emplace_back(*x, y);
  }
  return out;
}

std::vector<std::pair<BigInt, BigInt>> solve_square_d(const BigInt& k, const BigInt& N) {
  if (N == 0) throw std::domain_error("solve_square_d: N must be nonzero");
  if (k < 1) throw std::domain_error("solve_square_d: k must be >= 1");
  BigInt absN = ::abs(N);
  std::set<std::pair<BigInt, BigInt>> found;
  // x^2 - (ky)^2 = N  <=>  (x - ky)(x + ky) = N; walk divisor pairs
  for (BigInt d = 1; d * d <= absN; ++d) {
    if (!divides(d, absN)) continue;
    BigInt q = absN / d;
    BigInt sum, diff;
    if (N > 0) {
      sum = d + q;   // x - ky = d, x + ky = q
      diff = q - d;
    } else {
      sum = q - d;   // x - ky = -d, x + ky = q
      diff = q + d;
    }
    if (mpz_odd_p(sum.get_mpz_t())) continue;  // diff has the same parity
    BigInt x = sum / 2, w = diff / 2;
    if (!divides(k, w)) continue;
    found.emplace(x, w / k);
  }
  return {found.begin(), found.end()};
}

std::vector<ExtensionValue> pair_extension_values(const BigInt& a1, const BigInt& a2,
                                                  const BigInt& lo, const BigInt& hi) {
  if (!(0 < a1 && a1 < a2)) throw std::domain_error("pair_extension_values: need 0 < a1 < a2");
  if (lo > hi) throw std::domain_error("pair_extension_values: lo > hi");
  BigInt vlo = lo < 1 ? BigInt(1) : lo;
  std::vector<ExtensionValue> out;
  if (vlo > hi) return out;

  BigInt D = a1 * a2;
  BigInt N = 4 * a2 * (a2 - a1);
  BigInt r2_max = isqrt(a2 * hi + 4);

  std::vector<std::pair<BigInt, BigInt>> sols;  // (X = r1 a2, r2)
  if (auto k = is_perfect_square(D)) {
    sols = solve_square_d(*k, N);
  } else {
    sols = enumerate_solutions({D, N}, r2_max);
  }

  for (const auto& [X, r2] : sols) {
    if (r2 > r2_max) continue;
    if (!divides(a2, X)) continue;
    BigInt r1 = X / a2;
    BigInt t = r1 * r1 - 4;
    if (t <= 0) continue;  // v = 0 trivial solution
    if (!divides(a1, t)) continue;
    BigInt v = t / a1;
    if (v < vlo || v > hi) continue;
    // both square conditions must agree exactly
    if (r2 * r2 - 4 != a2 * v) continue;
    out.push_back({v, r1, r2});
  }
  std::sort(out.begin(), out.end(),
            [](const ExtensionValue& a, const ExtensionValue& b) { return a.value < b.value; });
  return out;
}

}  // namespace dquad
