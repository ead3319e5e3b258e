#ifndef EXPCERT_BOUNDS_HPP
#define EXPCERT_BOUNDS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "expcert/parity.hpp"
#include "expcert/real.hpp"
#include "expcert/triples.hpp"

namespace expcert {

enum class Direction { Upper, Lower };
std::string to_string(Direction d);

struct BoundReport {
  std::string bound_id;
  std::string subject;  // "Y", "X", "Delta", "x", "z", "K", "F_r(K)"
  Direction direction = Direction::Upper;
  bool strict = false;
  Real value;
  Assumptions assumptions;
  std::string note;
};

/// Y upper bounds when 2 | x, 2 | y, 2 | z. The first entry is the base bound;
/// a refined entry (valid unless Y = 1) follows when 2, 3 or 5 divides n.
std::vector<BoundReport> y_upper_even_z(const Instance& inst);

/// Y (and X) upper bounds when 2 | x, 2 | y and z is odd. Refined entries
/// require sqrt(c)/log c > r and hold unless Y = 1. Skipped refinements are
/// reported through `skipped`.
std::vector<BoundReport> y_upper_odd_z(const Instance& inst, std::vector<std::string>* skipped = nullptr,
                                       std::uint64_t divisor_bound = 1'000'000,
                                       const PrecisionSchedule& schedule = {});

/// Lower bound on min{a_(p)} over primes p | a. Exact when a factors within
/// the bound; otherwise the bound itself stands in for unseen prime parts.
BigInt min_prime_part_lower(const BigInt& a, std::uint64_t divisor_bound);

/// sqrt(c)/log c > r, certified.
bool root_log_condition(const Instance& inst, const PrecisionSchedule& schedule = {});

enum class OrderBranch { RXLessZ, RXGreaterZ };

/// Delta bounds for the branch 2|z / 2!|z and rX<z / rX>z, assuming 2|x, 2|y
/// and Delta > 0. `y_max` feeds the rX < z forms.
std::vector<BoundReport> delta_bounds(const Instance& inst, bool z_even, OrderBranch order,
                                      const std::optional<BigInt>& y_max,
                                      std::vector<std::string>* skipped = nullptr,
                                      const PrecisionSchedule& schedule = {});

/// Delta > log m / log n when Delta > 0 (exact when m, n share a perfect-power base).
/// nullopt for n = 1.
std::optional<BoundReport> delta_lower(const Instance& inst);

/// z-independent helpers for the linear-forms route.
Real delta_upper_linear_forms(const Real& z);          // 26e10 log z
Real min_power_exponent_linear_forms(const Real& z);   // z/2 - 6.5e10 log z

/// -2^2.5 e^2 30^5 D^2 A1 A2 log(eD) log(eB).
Real matveev_lower(unsigned long D, const Real& A1, const Real& A2, const BigInt& B);
Real matveev_lower_with_log_eB(unsigned long D, const Real& A1, const Real& A2, const Real& log_eB);

/// -25.2 D^4 (max{log b' + 0.38, 10/D, 1})^2 A1 A2.
Real laurent_lower(unsigned long D, const Real& A1, const Real& A2, const Real& bprime);

/// Lower bound for log(z log c - x log a) when y = 1, with s = x / log c.
Real y1_linear_form_lower(const Real& s, const Real& log_a, const Real& log_c);

/// The s solving log(2s + 1) + 0.38 = 10, i.e. (e^9.62 - 1)/2.
Real y1_s_threshold();

struct Y1Analysis {
  std::vector<BoundReport> bounds;
  bool eliminated = false;
  std::string route;  // "k-at-least-56", "f-small" or "prime-part-threshold"
  std::string reason;
  std::vector<Comparison> evidence;
};

/// y = 1 bounds and the cheap eliminations: K >= 56 when r = 2, the
/// prime-part threshold with t(n), and F_r(K) <= e^(1/7531.1).
Y1Analysis y1_bounds(const Instance& inst, const PrecisionSchedule& schedule = {});

/// max{n_(3), n_(5)} against (1534 log n)^1.5 t(n) sqrt n; Greater means the
/// threshold holds. nullopt for n < 4.
std::optional<Comparison> prime_part_threshold(const BigInt& n, const PrecisionSchedule& schedule = {});

/// Both require n >= 4.
Real s_of_n(const BigInt& n);
Real t_of_n(const BigInt& n);

class EtaUndefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct NuEta {
  Real nu;
  Real eta;
};

/// nu = 1 + log 2 / log mn and eta = (22 nu + 1) log 2 / (11 log(4^(alpha+1) / n^nu)).
/// Throws EtaUndefined unless n^nu < 4^(alpha+1) is certified.
NuEta nu_eta(const Instance& inst, unsigned long alpha, const PrecisionSchedule& schedule = {});

/// m > sqrt(n^eta - n^2), evaluated as log c > eta log n.
Comparison eta_hypothesis(const Instance& inst, const NuEta& ne, const PrecisionSchedule& schedule = {});

/// K^2 / (K^2 - (32/49) r^2). Requires r = 2 (mod 4) and K^2 > (32/49) r^2.
Real f_r_upper(const Rational& K, unsigned long r);

}  // namespace expcert

#endif  // EXPCERT_BOUNDS_HPP
