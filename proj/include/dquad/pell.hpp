#pragma once

#include <utility>
#include <vector>

#include "dquad/numerics.hpp"

namespace dquad {

/// Generalized Pell equation x^2 - D y^2 = N.
struct PellProblem {
  BigInt D;  // >= 1
  BigInt N;  // != 0
};

/// Minimal positive solution of x^2 - D y^2 = 1 for nonsquare D.
struct FundamentalUnit {
  BigInt x;
  BigInt y;
};

/// Class representative: minimal nonnegative y in its orbit under the
/// fundamental unit, x signed. Ambiguous classes are merged to x >= 0.
struct PellClass {
  BigInt x0;
  BigInt y0;
};

struct ExtensionValue {
  BigInt value;  // v with a1*v+4 and a2*v+4 both squares
  BigInt r1;     // r1^2 = a1*v + 4
  BigInt r2;     // r2^2 = a2*v + 4
};

/// Continued-fraction expansion of sqrt(D); throws std::domain_error for
/// D < 2 or square D.
FundamentalUnit fundamental_unit(const BigInt& D);

/// Complete duplicate-free set of solution-class representatives of
/// x^2 - D y^2 = N (D nonsquare). Every solution is (x0 + y0 sqrt D) u^j
/// up to sign.
std::vector<PellClass> solution_classes(const PellProblem& p);

/// All solutions with 0 <= y <= y_max, normalized to x >= 0, ascending in y.
std::vector<std::pair<BigInt, BigInt>> enumerate_solutions(const PellProblem& p,
                                                           const BigInt& y_max);

/// Complete finite solution set of x^2 - k^2 y^2 = N via divisor pairing,
/// x, y >= 0. N must be nonzero.
std::vector<std::pair<BigInt, BigInt>> solve_square_d(const BigInt& k, const BigInt& N);

/// All v in [lo, hi], v >= 1, with a1*v+4 and a2*v+4 both perfect squares,
/// found through the equation (r1 a2)^2 - (a1 a2) r2^2 = 4 a2 (a2 - a1).
/// Requires 0 < a1 < a2.
std::vector<ExtensionValue> pair_extension_values(const BigInt& a1, const BigInt& a2,
                                                  const BigInt& lo, const BigInt& hi);

}  // namespace dquad
