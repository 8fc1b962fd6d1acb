#pragma once

#include <vector>

#include "dquad/numerics.hpp"
#include "dquad/tuples.hpp"

namespace dquad {

enum class SeqKind { V, W };

/// Second-order recurrence u_{m+2} = coeff * u_{m+1} - u_m with
/// u_0 = z0 and u_1 = (coeff*z0 + c*x0)/2. The half-sum must be integral;
/// the factory rejects inputs violating the divisibility.
struct RecurrenceSpec {
  BigInt coeff;  // s for the V sequence, t for the W sequence
  BigInt z0;
  BigInt first;  // u_1
  SeqKind kind;

  static RecurrenceSpec make(const BigInt& coeff, const BigInt& z0, const BigInt& c,
                             const BigInt& x0, SeqKind kind);
};

/// First `count` terms (count >= 1), exact integers.
std::vector<BigInt> build_sequence(const RecurrenceSpec& spec, int count);

enum class ParityCase { EvenEven, OddOdd };

/// One admissible initial-condition tuple for the pair of sequences:
/// the V sequence starts from (z0, x0), the W sequence from (z1, y1).
struct InitCase {
  ParityCase id;
  BigInt z0, z1, x0, y1;
};

/// Both parity cases with sign-consistent z0, z1 (z0*z1 > 0):
///   EvenEven: x0 = y1 = 2, |z0| = |z1| = 2
///   OddOdd:   x0 = y1 = r, |z0| = t, |z1| = s
/// Throws std::domain_error when {a,b,c} is not a D(4)-triple.
std::vector<InitCase> admissible_inits(const BigInt& a, const BigInt& b, const BigInt& c);

struct Intersection {
  int m = 0;
  int n = 0;
  BigInt z;
  BigInt d;  // (z^2 - 4)/c when divisible; only such coincidences reported
};

/// All coincidences v_m = w_n = z > 0 over the admissible inits, with
/// m <= m_max, n <= n_max, m == n (mod 2), and c | z^2 - 4. Sorted by z,
/// deduplicated on (m, n, z).
std::vector<Intersection> find_intersections(const BigInt& a, const BigInt& b, const BigInt& c,
                                             int m_max, int n_max);

}  // namespace dquad
