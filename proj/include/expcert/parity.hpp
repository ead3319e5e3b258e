#ifndef EXPCERT_PARITY_HPP
#define EXPCERT_PARITY_HPP

#include <bitset>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expcert/triples.hpp"

namespace expcert {

/// Exponent quantities a claim can mention. X = x/2, Y = y/2, Z = z/2 and
/// Delta = |(r/2) x - z|.
enum class Var { x, y, z, X, Y, Z, Delta };
std::string to_string(Var v);

/// Hypotheses a fact may be conditional on.
enum class Tag : std::uint8_t {
  YGreaterOne,   // y > 1
  YEqualsOne,    // y = 1
  DeltaPositive, // Delta > 0
  ZEven,         // 2 | z
  ZOdd,          // 2 does not divide z
  RXLessZ,       // r X < z, i.e. (r/2) x < z
  RXGreaterZ,    // r X > z
};
constexpr std::size_t kTagCount = 7;
std::string to_string(Tag t);

class Assumptions {
 public:
  Assumptions() = default;
  Assumptions(std::initializer_list<Tag> tags);

  Assumptions with(Tag t) const;
  bool has(Tag t) const { return bits_.test(static_cast<std::size_t>(t)); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  bool subset_of(const Assumptions& other) const { return (bits_ & ~other.bits_).none(); }
  /// False when the set holds both sides of a split (2|z and 2 !| z, ...).
  bool consistent() const;
  std::vector<std::string> labels() const;

  friend Assumptions operator|(const Assumptions& a, const Assumptions& b);
  friend bool operator==(const Assumptions& a, const Assumptions& b) { return a.bits_ == b.bits_; }

 private:
  std::bitset<kTagCount> bits_;
};

/// A claim about the exponents of a putative solution.
struct Claim {
  enum class Kind {
    Even,          // 2 | v1
    Odd,           // 2 !| v1
    Congruent,     // v1 = v2 (mod 2)
    Less,          // v1 < v2
    AtLeast,       // v1 >= k
    NotDivisible,  // k !| v1
    AtMostAffine,  // v2 <= k * v1 + k2
  };
  Kind kind = Kind::Even;
  Var v1 = Var::x;
  Var v2 = Var::x;
  long k = 0;
  long k2 = 0;

  static Claim even(Var v) { return {Kind::Even, v, v, 0, 0}; }
  static Claim odd(Var v) { return {Kind::Odd, v, v, 0, 0}; }
  static Claim congruent(Var a, Var b) { return {Kind::Congruent, a, b, 0, 0}; }
  static Claim less(Var a, Var b) { return {Kind::Less, a, b, 0, 0}; }
  static Claim at_least(Var v, long k) { return {Kind::AtLeast, v, v, k, 0}; }
  static Claim not_divisible(Var v, long k) { return {Kind::NotDivisible, v, v, k, 0}; }
  static Claim at_most_affine(Var bounded, long k, Var by, long k2) {
    return {Kind::AtMostAffine, by, bounded, k, k2};
  }

  std::string str() const;
  friend bool operator==(const Claim& a, const Claim& b);
};

struct Fact {
  Claim claim;
  Assumptions assumptions;
  std::vector<std::string> provenance;  // rule ids, never empty

  std::string str() const;
};

struct Deduction {
  std::string rule_id;
  std::vector<std::string> premises;
  Fact conclusion;
};

struct NotAttempted {
  std::string rule_id;
  std::string reason;
};

struct RuleReport {
  std::vector<Deduction> deductions;
  std::vector<NotAttempted> not_attempted;

  std::vector<Fact> facts() const;
};

/// Instance-level premises that gate the rule catalogue.
struct RuleContext {
  std::optional<TwoAdicProfile> profile;
  bool positivity = false;
  bool k_above_three_halves = false;
  std::uint64_t divisor_bound = 1'000'000;
};

RuleContext make_rule_context(const Instance& inst, std::uint64_t divisor_bound = 1'000'000,
                              const PrecisionSchedule& schedule = {});

/// Congruence rules whose premises are arithmetic conditions on (m, n, r).
RuleReport apply_rules(const Instance& inst, const RuleContext& ctx);

/// Rules whose premises are parity facts (half exponents, ordering, size
/// floors). Appends deductions for every new conclusion.
void apply_fact_rules(const Instance& inst, const RuleContext& ctx, const std::vector<Fact>& facts,
                      RuleReport& report);

struct Contradiction {
  Var subject = Var::x;
  Assumptions assumptions;
  std::vector<std::string> provenance;
};

struct ClosureResult {
  std::vector<Fact> facts;
  std::vector<Contradiction> contradictions;
};

/// Fixed point of even/odd propagation through congruences. Both Even(v) and
/// Odd(v) under a consistent union of assumptions is recorded as a
/// Contradiction on that union.
ClosureResult closure(const std::vector<Fact>& facts);

/// Facts usable under the given assumption set.
std::vector<Fact> facts_under(const std::vector<Fact>& facts, const Assumptions& assumptions);
bool implies(const std::vector<Fact>& facts, const Claim& claim, const Assumptions& assumptions);
std::optional<Contradiction> contradiction_under(const ClosureResult& closed,
                                                 const Assumptions& assumptions);

/// Whether (x, y, z) meets every tag in the set.
bool solution_meets(const Assumptions& assumptions, unsigned long r, const BigInt& x,
                    const BigInt& y, const BigInt& z);
/// Truth of the claim at (x, y, z); nullopt when it mentions a half exponent
/// of an odd value.
std::optional<bool> claim_holds(const Claim& claim, unsigned long r, const BigInt& x,
                                const BigInt& y, const BigInt& z);

}  // namespace expcert

#endif  // EXPCERT_PARITY_HPP
