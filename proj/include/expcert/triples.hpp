#ifndef EXPCERT_TRIPLES_HPP
#define EXPCERT_TRIPLES_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "expcert/numth.hpp"
#include "expcert/real.hpp"

namespace expcert {

/// (m, n, r) together with a = |Re (m + ni)^r|, b = |Im (m + ni)^r|, c = m^2 + n^2.
struct Instance {
  BigInt m;
  BigInt n;
  unsigned long r = 2;
  BigInt a;
  BigInt b;
  BigInt c;

  Rational K() const { return Rational(m, n); }
  /// r = 2 (mod 4); the congruence rules are only stated for this class.
  bool in_rule_coverage() const { return r % 4 == 2; }
};

/// Names the violated constraint, e.g. "gcd(m, n) = 1".
class InvalidInstance : public std::invalid_argument {
 public:
  explicit InvalidInstance(const std::string& constraint)
      : std::invalid_argument("invalid instance: requires " + constraint), constraint_(constraint) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

/// Exact construction by binary powering in Z[i]. Verifies a^2 + b^2 = c^r.
Instance build_instance(const BigInt& m, const BigInt& n, unsigned long r);

/// (m + ni)^r as (real, imaginary).
std::pair<BigInt, BigInt> gaussian_pow(const BigInt& re, const BigInt& im, unsigned long r);

/// True iff r = 2, or r = 2 (mod 4) and m*pi > 2rn (certified).
/// Throws IndeterminateError when the comparison cannot be separated.
bool positivity_condition(const Instance& inst, const PrecisionSchedule& schedule = {});

/// Decomposition of the even member as 2^alpha * i and of the odd member as
/// 2^beta * j + e, with i, j odd and e in {1, -1}.
struct TwoAdicProfile {
  unsigned long alpha = 0;
  unsigned long beta = 0;
  BigInt i;
  BigInt j;
  int e = 1;
  bool n_even = true;

  /// The "balanced" family 2 alpha = beta + 1.
  bool balanced() const { return 2 * alpha == beta + 1; }
};

/// Throws std::invalid_argument when m - n is even or the odd member equals e.
TwoAdicProfile two_adic_profile(const BigInt& m, const BigInt& n);
std::optional<TwoAdicProfile> try_two_adic_profile(const BigInt& m, const BigInt& n);

/// ord_2 of the even member of (m, n).
unsigned long even_member_valuation(const Instance& inst);

/// F_r(K) = c^(r/2) / a, always an exact rational.
Rational f_ratio(const Instance& inst);
Real f_r_of_K(const Instance& inst);

}  // namespace expcert

#endif  // EXPCERT_TRIPLES_HPP
