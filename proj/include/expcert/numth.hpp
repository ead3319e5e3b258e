#ifndef EXPCERT_NUMTH_HPP
#define EXPCERT_NUMTH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace expcert {

/// Arbitrary-precision integer. Used for every exact magnitude in the engine.
using BigInt = mpz_class;
/// Exact rational.
using Rational = mpq_class;

/// Thrown when the hypotheses of the lifting-the-exponent identity fail.
class LteHypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

BigInt gcd(const BigInt& a, const BigInt& b);

/// Jacobi symbol (a/n) for odd n > 1. Throws std::invalid_argument otherwise.
int jacobi(const BigInt& a, const BigInt& n);

/// Exponent of the prime p in n (n >= 1).
unsigned long ord_p(const BigInt& n, const BigInt& p);

/// p^ord_p(n), the p-part of n.
BigInt p_part(const BigInt& n, const BigInt& p);

/// ord_p(U^k - V^k) computed as ord_p(U - V) + ord_p(k).
///
/// Requires gcd(U, V) = 1, U != V, and U = V (mod p) for odd p or
/// U = V (mod 4) for p = 2. Any violated hypothesis is reported by name.
unsigned long lte_valuation(const BigInt& u, const BigInt& v, const BigInt& p,
                            const BigInt& k);

BigInt modpow(const BigInt& base, const BigInt& exponent, const BigInt& modulus);
std::uint64_t modpow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

enum class Primality { Composite, Prime, ProbablePrime };

/// Trial division below 10^6, deterministic Miller-Rabin for 64-bit values,
/// and a 64-round probabilistic test (error < 2^-128) above that.
Primality primality(const BigInt& n);
bool is_prime(const BigInt& n);

/// Primes up to 10^6, computed once.
const std::vector<std::uint32_t>& small_primes();

struct PrimePower {
  BigInt prime;
  unsigned long exponent = 0;
};

struct Factorization {
  enum class Cofactor { One, Prime, ProbablePrime, Unfactored };

  std::vector<PrimePower> factors;
  BigInt cofactor = 1;
  Cofactor cofactor_status = Cofactor::One;

  bool complete() const { return cofactor_status != Cofactor::Unfactored; }
};

/// Trial division of n by primes <= bound. Whatever remains is classified.
Factorization trial_factor(const BigInt& n, std::uint64_t bound);

/// All divisors d > 1 reachable from the factorization (the unfactored
/// cofactor, if any, is treated as an atom). Sorted ascending.
std::vector<BigInt> divisors(const Factorization& f);

/// If n = g^k with k maximal, returns {g, k}; {n, 1} when n is not a perfect power.
struct PerfectPower {
  BigInt base;
  unsigned long exponent = 1;
};
PerfectPower perfect_power_root(const BigInt& n);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

}  // namespace expcert

#endif  // EXPCERT_NUMTH_HPP
