#include <doctest.h>

#include <random>

#include "expcert/numth.hpp"
#include "oracles.hpp"

using namespace expcert;

TEST_CASE("gcd examples") {
  CHECK(gcd(0, 7) == 7);
  CHECK(gcd(4402337, 16) == 1);
  CHECK(gcd(BigInt(289) * 15233, 255) == 17);
}

TEST_CASE("jacobi examples and errors") {
  CHECK(jacobi(1, 9) == 1);
  CHECK(jacobi(-1, 7) == -1);
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(3, 9) == 0);
  CHECK_THROWS_AS(jacobi(3, 8), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(3, 1), std::invalid_argument);
}

TEST_CASE("jacobi matches Euler's criterion on odd moduli") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 400; ++t) {
    const unsigned long n = 3 + 2 * (rng() % 5000);
    const long a = static_cast<long>(rng() % 20000) - 10000;
    CHECK(jacobi(a, n) == oracle::jacobi_euler(a, n));
  }
}

TEST_CASE("jacobi is multiplicative in the top argument") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const unsigned long n = 3 + 2 * (rng() % 3000);
    const long a = static_cast<long>(rng() % 1000), b = static_cast<long>(rng() % 1000);
    CHECK(jacobi(a, n) * jacobi(b, n) == jacobi(BigInt(a) * b, n));
  }
}

TEST_CASE("ord_p and p_part") {
  CHECK(ord_p(16, 2) == 4);
  CHECK(p_part(16, 2) == 16);
  CHECK(ord_p(216, 3) == 3);
  CHECK(p_part(216, 3) == 27);
  CHECK(ord_p(4402353, 3) == 1);
  CHECK_THROWS(ord_p(0, 3));
}

TEST_CASE("lte valuation examples") {
  CHECK(lte_valuation(4, 1, 3, 3) == 2);
  CHECK(lte_valuation(5, 1, 2, 4) == 4);
  CHECK(lte_valuation(10, 1, 3, 1) == 2);
  CHECK_THROWS_AS(lte_valuation(5, 3, 2, 2), LteHypothesisError);  // 5 != 3 (mod 4)
  CHECK_THROWS_AS(lte_valuation(6, 3, 3, 2), LteHypothesisError);  // not coprime
  CHECK_THROWS_AS(lte_valuation(4, 2, 3, 2), LteHypothesisError);  // 3 does not divide 2
}

TEST_CASE("lte valuation equals direct valuation") {
  std::mt19937_64 rng(13);
  const unsigned long primes[] = {2, 3, 5, 7, 11, 13};
  int checked = 0;
  while (checked < 300) {
    const unsigned long p = primes[rng() % 6];
    const long v = static_cast<long>(rng() % 200) + 1;
    const long step = p == 2 ? 4 : static_cast<long>(p);
    const long u = v + step * (static_cast<long>(rng() % 40) + 1);
    if (std::gcd(u, v) != 1) continue;
    const unsigned long k = rng() % 30 + 1;
    const oracle::Z diff = oracle::pow(u, k) - oracle::pow(v, k);
    CHECK(lte_valuation(u, v, p, k) == oracle::valuation(diff, p));
    ++checked;
  }
}

TEST_CASE("modpow") {
  CHECK(modpow(BigInt(3), BigInt(0), BigInt(7)) == 1);
  CHECK(modpow(BigInt(3), BigInt(4), BigInt(5)) == 1);
  CHECK(modpow(BigInt(2), BigInt(10), BigInt(1000)) == 24);
  CHECK(modpow(std::uint64_t{2}, 10, 1000) == 24);
}

TEST_CASE("primality and factoring") {
  CHECK(is_prime(1467451) == oracle::is_prime_naive(1467451));
  CHECK(is_prime(57173) == oracle::is_prime_naive(57173));
  CHECK_FALSE(is_prime(1));
  CHECK(primality(BigInt("170141183460469231731687303715884105727")) == Primality::ProbablePrime);
  const Factorization f = trial_factor(4402321, 1000000);
  CHECK(f.complete());
  BigInt product = f.cofactor;
  for (const auto& pp : f.factors) {
    BigInt t;
    mpz_pow_ui(t.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    product *= t;
  }
  CHECK(product == 4402321);
  const auto ds = divisors(trial_factor(12, 100));
  CHECK(ds == std::vector<BigInt>{2, 3, 4, 6, 12});
}

TEST_CASE("perfect powers") {
  CHECK(perfect_power_root(15625).base == 5);
  CHECK(perfect_power_root(15625).exponent == 6);
  CHECK(perfect_power_root(12).exponent == 1);
}
