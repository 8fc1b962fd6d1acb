#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dquad/guarded.hpp"
#include "dquad/numerics.hpp"

namespace dquad {

/// Thrown when a bound function is called outside its hypotheses; the
/// message names the violated condition.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a guarded comparison stays undecided at the maximum working
/// precision.
class UndecidedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symbol bundle feeding the inequality registry: a1 < a2 < b < c with the
/// derived quantities recomputed on demand.
struct BoundParams {
  BigInt a1, a2, b, c;
  Rational k = 1;        // the b > k*a2 refinement parameter
  Rational epsilon = 1;  // the c > b^epsilon parameter, in [1, 12)

  BigInt a1_prime() const;  // max{4(a2-a1), 4a1}
  BigInt N() const;         // a1*a2*c
};

struct LambdaResult {
  GuardedReal lambda;
  GuardedReal theta1;  // sqrt(1 + 4a2/N)
  GuardedReal theta2;  // sqrt(1 + 4a1/N)
};

enum class Parity { Odd, Even };

/// Hypotheses of the simultaneous-approximation theorem:
/// 0 < a1 <= a2-2, a2 >= 3, a1*a2 | N, N >= 396.59 a1' a2^2 (a2-a1)^2.
/// Exact rational arithmetic throughout.
bool rickert_hypotheses(const BoundParams& p);

/// lambda = 1 + log(2.500788 a1^-1 a1' a2 N) / log(0.04216 a1^-1 a2^-1 (a2-a1)^-2 N^2);
/// requires rickert_hypotheses; asserts lambda < 2.
LambdaResult lambda_value(const BoundParams& p,
                          mpfr_prec_t prec = GuardedReal::kDefaultPrec);

/// Four-log quotient bound on the index n. Requires rickert_hypotheses,
/// c > 4.1e-5 a2 b^3 and b > 1e5; throws HypothesisError otherwise.
GuardedReal n_upper(const BoundParams& p, mpfr_prec_t prec = GuardedReal::kDefaultPrec);

/// Lower bound on n: 0.09226 b^-1/2 c^1/4 (odd) or 0.340134 b^-1/2 c^1/2 (even).
/// Requires c > max{0.56 b^3, 0.001 a2^2 b^2} and b > 1e5.
GuardedReal n_lower(const BigInt& b, const BigInt& c, Parity parity, const BigInt& a2,
                    mpfr_prec_t prec = GuardedReal::kDefaultPrec);

/// m < ((eps+1)/(0.999 eps)) n + 1.5 - 0.4 (eps+1)/(0.999 eps); exact rational.
GuardedReal m_upper_epsilon(long n, const Rational& epsilon,
                            mpfr_prec_t prec = GuardedReal::kDefaultPrec);

/// The same four-log quotient as n_upper, evaluated at an arbitrary c with
/// only positivity of the log arguments required.
GuardedReal phi(const BigInt& c, const BoundParams& p,
                mpfr_prec_t prec = GuardedReal::kDefaultPrec);

/// c > 0.01685^-1 a1^-1 a1' a2 (a2-a1)^2, decided exactly over rationals.
bool phi_decreasing_condition(const BoundParams& p);

/// b < 8.4034e13 a1^1/2 (a1')^1/2 a2^2.
GuardedReal b_upper_lemma31(const BigInt& a1, const BigInt& a2,
                            mpfr_prec_t prec = GuardedReal::kDefaultPrec);

// ---------------------------------------------------------------------------
// Inequality registry
// ---------------------------------------------------------------------------

enum class IneqId {
  Thm51Case1,
  Thm51Case2,
  Prop4a1,
  A2_01Case1,
  A2_01Case2,
  A2_0251Case1,
  A2_0251Case2,
  Sec6SmallA1,
  Sec6LargeA1,
  Lemma31Contradiction,
};

struct IneqInfo {
  IneqId id;
  const char* name;      // CLI spelling, e.g. "thm51-case1"
  const char* variable;  // which symbol the registry searches over
  bool iterable;         // supports the k = 1e5/bound refinement loop
  BigInt search_limit;   // upper end of the search range
};

const std::vector<IneqInfo>& ineq_registry();
const IneqInfo& ineq_info(IneqId id);
std::optional<IneqId> ineq_from_name(std::string_view name);

enum class Tri { False, True, Undecided };

/// One evaluation of the registered predicate at fixed precision.
Tri eval_inequality(IneqId id, const BigInt& value, const Rational& k, mpfr_prec_t prec);

/// Escalating evaluation; throws UndecidedError past the maximum precision.
bool inequality_holds(IneqId id, const BigInt& value, const Rational& k);

/// Largest value >= 3 in the id's search range satisfying the inequality;
/// nullopt when the predicate never holds. Exponential bracket + bisection,
/// then a 10^3 linear window against non-monotone wobble.
std::optional<BigInt> max_a2_satisfying(IneqId id, const Rational& k);

/// Bound sequence under the k-refinement loop k_{i+1} = 1e5 / bound_i,
/// starting from k = 1; stops at a fixpoint or after 64 rounds.
std::vector<BigInt> iterate_a2_bound(IneqId id);

struct MBoundResult {
  BigInt m_max;       // largest m with m / (log(38.92(m+1)) log^2 m) < 2.7717e16
  long c_log10_max;   // floor(100 log10 m_max)
  int d_log10_log10;  // ceil(log10(2 log10 v_bound))
};
MBoundResult solve_m_bound();

/// Numeric c ceilings of the two a2-vs-a1^2 case analyses: largest integer c
/// satisfying the rewritten inequality with the branch's a1 range inserted.
enum class Sec5Branch { A2Above001, A2Above00251 };
BigInt sec5_c_upper(Sec5Branch branch);

/// Largest b with 0.09226 (a1^2 b / 4)^(1/4) below the four-log quotient
/// evaluated at c = a1^2 b^3 / 4: the per-pair search ceiling on b.
/// nullopt when the inequality never holds below `cap`.
std::optional<BigInt> per_pair_b_ceiling(const BigInt& a1, const BigInt& a2,
                                         const BigInt& cap);

struct ApproximationGap {
  GuardedReal gap1;   // |theta1 - s1 a2 x1 / (a1 a2 z)|
  GuardedReal gap2;   // |theta2 - s2 a1 x2 / (a1 a2 z)|
  GuardedReal bound;  // 2c / (a1 z^2)
  bool within_bound;  // both gaps surely below the bound
};

/// Requires (z, x1), (z, x2) to solve the two Pellian equations of the system
/// exactly, and a1 c + 4, a2 c + 4 to be perfect squares.
ApproximationGap approximation_gap(const BigInt& a1, const BigInt& a2, const BigInt& c,
                                   const BigInt& z, const BigInt& x1, const BigInt& x2,
                                   mpfr_prec_t prec = GuardedReal::kDefaultPrec);

}  // namespace dquad
