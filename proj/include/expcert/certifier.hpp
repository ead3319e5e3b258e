#ifndef EXPCERT_CERTIFIER_HPP
#define EXPCERT_CERTIFIER_HPP

#include <optional>
#include <string>
#include <vector>

#include "expcert/bounds.hpp"
#include "expcert/cfrac.hpp"
#include "expcert/parity.hpp"

namespace expcert {

inline constexpr int kSchemaVersion = 1;

struct EngineOptions {
  PrecisionSchedule schedule;
  std::uint64_t divisor_bound = 1'000'000;
  bool use_shortcuts = true;
};

enum class Verdict { ConjectureHolds, Undecided };
std::string to_string(Verdict v);

enum class Closure {
  Open,
  ParityContradiction,
  BoundConflict,
  CfElimination,
  TrivialForced,
  ExternalCitation,
  TheoremShortcut,
};
std::string to_string(Closure c);

struct BoundEval {
  std::string bound_id;
  std::string subject;
  Direction direction = Direction::Upper;
  bool strict = false;
  std::string interval;
  std::optional<BigInt> integer;  // rounded conservatively
  std::string note;
};

/// Certified lower > upper for one quantity.
struct Conflict {
  std::string subject;
  std::string lower_source;
  std::string lower;
  std::string upper_source;
  std::string upper;
};

struct TraceNode {
  std::string label;  // hypothesis split on, e.g. "y>1"
  Assumptions assumptions;
  std::vector<std::string> facts;  // facts first available at this node
  std::vector<BoundEval> bounds;
  Closure closure = Closure::Open;
  std::string detail;
  std::optional<Conflict> conflict;
  std::vector<TraceNode> children;

  bool closed() const;
};

struct Evidence {
  std::string label;
  Comparison comparison;
};

struct Hypothesis {
  std::string statement;
  std::optional<bool> holds;  // nullopt when undecided
  std::optional<Comparison> comparison;
};

struct ShortcutResult {
  std::string name;
  bool applicable = false;  // every hypothesis verified
  bool informational = false;  // recorded but never used to close branches
  std::vector<Hypothesis> hypotheses;
  std::string note;
};

struct Certificate {
  Instance inst;
  bool symbolic = false;
  std::string log10_m;  // symbolic mode only
  Verdict verdict = Verdict::Undecided;
  std::vector<Deduction> rules;
  std::vector<NotAttempted> not_attempted;
  TraceNode trace;
  std::vector<ShortcutResult> shortcuts;
  std::vector<Evidence> evidence;
  std::vector<std::string> open_branches;
};

/// Whole-instance results. Each records every hypothesis and whether it held.

/// m > max{n^(10.4e11 log(5.2e11 log n)), 3e^r, 70.2nr} in log space, for
/// r = 2 (mod 4), m = 3 (mod 4), n even.
ShortcutResult check_large_m(const Instance& inst, const EngineOptions& opt = {});
/// Same threshold with log10 m supplied directly; m = 3 (mod 4) is assumed.
ShortcutResult check_large_m_symbolic(const std::string& log10_m, const BigInt& n, unsigned long r,
                                      const EngineOptions& opt = {});
/// r = 2 forms m > n^(10.4e11 log(C log n)) for C = 5.2e11 and C = 1e11.
std::vector<ShortcutResult> check_large_m_r2(const Instance& inst, const EngineOptions& opt = {});
/// r = 2, m = 3 (mod 4), m > 56n, with either the nu/eta hypotheses or n = 2^alpha.
ShortcutResult check_eta_route(const Instance& inst, const EngineOptions& opt = {});
/// r = 2, m = 3 (mod 4), m > 56n or the prime-part threshold, with the s(n)
/// condition (and the 2 sqrt(n log n) pair for the excluded family).
ShortcutResult check_prime_part_route(const Instance& inst, const EngineOptions& opt = {});
/// r = 2, m = 3 (mod 4), outside the excluded family, n <= 64 (with the
/// convergent scan when m < 56n) or n > 64, n_(2) > sqrt n, m > 56n.
ShortcutResult check_small_n(const Instance& inst, const EngineOptions& opt = {});
/// r = 2, m = 3 (mod 4), n = 6^u with u >= 94 or n = 10^v with v >= 40.
ShortcutResult check_six_ten_powers(const Instance& inst, const EngineOptions& opt = {});
/// m = 3 (mod 4), n < 64, 56n < m < (2n)^10, outside the listed (alpha, beta) family.
ShortcutResult check_moderate_m_window(const Instance& inst, const EngineOptions& opt = {});
/// n = 2 (mod 4), m = 3 (mod 4), r = 2 (mod 4), positivity, and
/// F_r(K) < e^(1/7531.1) so that y = 1 is impossible.
ShortcutResult check_alpha_one(const Instance& inst, const EngineOptions& opt = {});
/// Every whole-instance check above, in a fixed order.
std::vector<ShortcutResult> check_shortcuts(const Instance& inst, const EngineOptions& opt = {});

/// The excluded family 2 alpha = beta + 1, j = 1 (mod 4), optionally with alpha >= 3.
bool in_excluded_family(const TwoAdicProfile& p, bool require_alpha_three);

/// The cited congruence family: m = 4 (mod 8) and n = 7 (mod 16), or
/// m = 7 (mod 16) and n = 4 (mod 8). The conjecture is known there for r = 2.
bool cited_congruence_family(const BigInt& m, const BigInt& n);

/// For n = 6^t: the least and greatest j = 1 (mod 4) with
/// n < 2^(2t-1) j - 1 < 1.5 n. nullopt when no such j exists.
std::optional<std::pair<BigInt, BigInt>> six_power_j_range(unsigned long t);

Certificate certify(const Instance& inst, const EngineOptions& opt = {});
/// Hypothesis-only evaluation through the large-m criterion.
Certificate certify_symbolic(const std::string& log10_m, const BigInt& n, unsigned long r,
                             const EngineOptions& opt = {});

}  // namespace expcert

#endif  // EXPCERT_CERTIFIER_HPP
