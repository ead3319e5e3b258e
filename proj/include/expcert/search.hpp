#ifndef EXPCERT_SEARCH_HPP
#define EXPCERT_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "expcert/triples.hpp"

namespace expcert {

struct SearchBox {
  unsigned long x_max = 30;
  unsigned long y_max = 30;
  unsigned long z_max = 30;
};

struct Solution {
  unsigned long x = 0;
  unsigned long y = 0;
  unsigned long z = 0;

  friend bool operator==(const Solution& a, const Solution& b) = default;
  friend auto operator<=>(const Solution& a, const Solution& b) = default;
};

struct SieveConfig {
  bool enabled = true;
  std::vector<std::uint64_t> moduli{8, 3, 5, 7, 11, 13, 16, 9};
  /// Also sieve by prime divisors below 1000 of c - 1 and c + 1.
  bool add_c_neighbour_primes = true;
  std::size_t bit_cap = 1'000'000;
  unsigned jobs = 1;
};

struct ModulusStat {
  std::uint64_t modulus = 0;
  std::uint64_t tested = 0;
  std::uint64_t rejected = 0;
};

struct SearchReport {
  Instance inst;
  SearchBox box;
  std::vector<Solution> solutions;  // sorted
  std::vector<ModulusStat> sieve_stats;
  std::uint64_t candidates = 0;     // (x, y, z) triples reaching the sieve
  std::uint64_t exact_checks = 0;
  std::vector<std::string> truncations;

  bool only_trivial() const;
};

/// Every (x, y, z) in [1, x_max] x [1, y_max] x [1, z_max] with
/// a^x + b^y = c^z, each confirmed exactly. The sieve only skips exact work.
SearchReport exhaustive_search(const Instance& inst, const SearchBox& box, const SieveConfig& sieve = {});

/// The moduli actually used for an instance under the given config.
std::vector<std::uint64_t> sieve_moduli(const Instance& inst, const SieveConfig& sieve);

/// False only if a^x + b^y != c^z modulo some modulus.
bool sieve_admissible(const Instance& inst, unsigned long x, unsigned long y, unsigned long z,
                      const std::vector<std::uint64_t>& moduli);

bool verify_solution(const Instance& inst, unsigned long x, unsigned long y, unsigned long z);

}  // namespace expcert

#endif  // EXPCERT_SEARCH_HPP
