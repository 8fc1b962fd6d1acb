#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dquad/numerics.hpp"

namespace dquad {

/// Pairwise square-root witnesses of a verified D(n)-tuple: one entry
/// (i, j, root) per pair i < j with elements[i]*elements[j] + n = root^2.
struct WitnessMap {
  std::vector<std::pair<std::pair<size_t, size_t>, BigInt>> roots;
};

struct VerifyResult {
  bool ok = false;
  WitnessMap witnesses;  // filled only when ok
};

/// Checks the D(n) property for a candidate set. Throws std::invalid_argument
/// on duplicate or nonpositive elements.
VerifyResult verify_tuple(const std::vector<BigInt>& candidate, const BigInt& n);

/// A D(4)-triple a < b < c with its witnesses r, s, t
/// (r^2 = ab+4, s^2 = ac+4, t^2 = bc+4). Constructor re-sorts ascending and
/// throws std::domain_error when the inputs are not a D(4)-triple.
class TripleContext {
 public:
  TripleContext(const BigInt& a, const BigInt& b, const BigInt& c);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& r() const { return r_; }
  const BigInt& s() const { return s_; }
  const BigInt& t() const { return t_; }

 private:
  BigInt a_, b_, c_, r_, s_, t_;
};

/// d+ = a+b+c+(abc+rst)/2; the regular extension, always > max{a,b,c}.
BigInt d_plus(const TripleContext& ctx);

/// d- = a+b+c+(abc-rst)/2; zero exactly when c = a+b+2r, otherwise the
/// smaller extension with 0 < d- < c.
BigInt d_minus(const TripleContext& ctx);

enum class QuadrupleClass { Regular, Irregular };

/// Requires {a,b,c,d} to verify as a D(4)-quadruple with a<b<c<d; Regular
/// iff d == d_plus(a,b,c).
QuadrupleClass classify_quadruple(const BigInt& a, const BigInt& b, const BigInt& c,
                                  const BigInt& d);

}  // namespace dquad
