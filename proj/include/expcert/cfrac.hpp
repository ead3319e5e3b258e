#ifndef EXPCERT_CFRAC_HPP
#define EXPCERT_CFRAC_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "expcert/real.hpp"
#include "expcert/triples.hpp"

namespace expcert {

/// Simple continued fraction of log a / log c. Index k holds a_k, the
/// convergent p_k / q_k (q_0 = 1), and whether a_k is certified.
struct ContinuedFraction {
  std::vector<BigInt> partial_quotients;
  std::vector<BigInt> numerators;
  std::vector<BigInt> denominators;
  std::vector<bool> certified;
  /// a and c multiplicatively dependent: the expansion is exact and finite.
  bool rational = false;
  /// The precision cap was hit before the q-limit was passed.
  bool truncated = false;
  unsigned long precision_bits = 0;

  std::size_t size() const { return partial_quotients.size(); }
  std::size_t certified_count() const;
};

/// Partial quotients of log a / log c up to and including the first q_k
/// exceeding q_limit. A term counts as certified when every point of the
/// enclosing interval shares it and two consecutive precisions agree.
ContinuedFraction cf_expand(const BigInt& a, const BigInt& c, const BigInt& q_limit,
                            const PrecisionSchedule& schedule = {});

/// Smallest k with F_(k+1) > q_limit; every q_s <= q_limit has s < k.
std::size_t fibonacci_index_bound(const BigInt& q_limit);
BigInt fibonacci(std::size_t k);

struct ScanEntry {
  std::size_t s = 0;
  BigInt q_s;
  BigInt next_quotient;  // a_(s+1)
  /// nullopt when the comparison or a CF term is not certified.
  std::optional<bool> holds;
  std::optional<Comparison> comparison;
};

struct Scan {
  ContinuedFraction cf;
  BigInt q_limit;  // largest integer strictly below multiplier * log c
  std::size_t index_bound = 0;
  std::vector<ScanEntry> entries;
};

/// For each s with 4 <= q_s < multiplier * log c, whether
/// a_(s+1) + 2 > a^(q_s) log c / (b q_s), compared in log space.
Scan convergent_scan(const Instance& inst, const Real& multiplier = Real(2521),
                  const PrecisionSchedule& schedule = {});

/// 2 q_(s+1) > a^(q_s - 2), compared in log space. Throws std::out_of_range
/// when a_(s+1) is not certified.
Comparison denominator_growth_check(const ContinuedFraction& cf, std::size_t s, const BigInt& a,
                         const PrecisionSchedule& schedule = {});

enum class Elimination { Eliminated, NotEliminated, Indeterminate };
std::string to_string(Elimination e);

struct EliminationResult {
  Elimination verdict = Elimination::Indeterminate;
  Scan scan;
  std::vector<std::size_t> witnesses;  // indices s where the inequality holds or is undecided
  /// z = 1, 2 are outside the scan's argument and are settled exactly.
  bool small_z_excluded = false;
  std::string note;
};

/// y = 1 elimination for r = 2 via the convergent scan, with the x-bound
/// multiplier * log c (1534 by default). Throws std::invalid_argument for r != 2.
EliminationResult eliminate_y1(const Instance& inst, const Real& multiplier = Real(1534),
                               const PrecisionSchedule& schedule = {});

}  // namespace expcert

#endif  // EXPCERT_CFRAC_HPP
