#include <doctest.h>

#include <random>

#include "expcert/triples.hpp"
#include "oracles.hpp"

using namespace expcert;

TEST_CASE("instance construction examples") {
  const Instance i1 = build_instance(2, 1, 2);
  CHECK(i1.a == 3);
  CHECK(i1.b == 4);
  CHECK(i1.c == 5);
  const Instance i2 = build_instance(3, 2, 2);
  CHECK(i2.a == 5);
  CHECK(i2.b == 12);
  CHECK(i2.c == 13);
  const Instance i3 = build_instance(2, 1, 6);
  CHECK(i3.a == 117);
  CHECK(i3.b == 44);
  CHECK(i3.c == 5);
}

TEST_CASE("invalid instances name the violated constraint") {
  auto constraint = [](long m, long n, unsigned long r) {
    try {
      build_instance(m, n, r);
    } catch (const InvalidInstance& e) {
      return e.constraint();
    }
    return std::string("none");
  };
  CHECK(constraint(4, 2, 2) == "gcd(m, n) = 1");
  CHECK(constraint(1, 2, 2) == "m > n");
  CHECK(constraint(3, 1, 2) == "m - n odd");
  CHECK(constraint(2, 1, 3) == "r even");
  CHECK(constraint(2, 0, 2) == "n >= 1");
}

TEST_CASE("identity, coprimality and parity on random instances") {
  std::mt19937_64 rng(31);
  int built = 0;
  while (built < 200) {
    const long n = static_cast<long>(rng() % 500) + 1;
    const long m = n + 1 + static_cast<long>(rng() % 500);
    if (std::gcd(m, n) != 1 || (m - n) % 2 == 0) continue;
    const unsigned long r = std::vector<unsigned long>{2, 6, 10}[rng() % 3];
    const Instance inst = build_instance(m, n, r);
    const auto [re, im] = oracle::gaussian_pow(m, n, r);
    CHECK(inst.a == abs(re));
    CHECK(inst.b == abs(im));
    CHECK(inst.c == m * m + n * n);
    CHECK(inst.a * inst.a + inst.b * inst.b == oracle::pow(inst.c, r));
    CHECK(gcd(inst.a, inst.b) == 1);
    CHECK(mpz_even_p(inst.b.get_mpz_t()));
    if (r == 2) {
      CHECK(inst.a == m * m - n * n);
      CHECK(inst.b == 2 * m * n);
      const BigInt big = inst.a > inst.b ? inst.a : inst.b;
      const BigInt small = inst.a < inst.b ? inst.a : inst.b;
      CHECK(big < inst.c);
      CHECK(inst.c < small * small);
    }
    ++built;
  }
}

TEST_CASE("positivity condition") {
  CHECK(positivity_condition(build_instance(2, 1, 2)));
  CHECK(positivity_condition(build_instance(100, 1, 6)));
  CHECK_FALSE(positivity_condition(build_instance(3, 2, 6)));
}

TEST_CASE("two-adic profiles") {
  const TwoAdicProfile p1 = two_adic_profile(7, 16);
  CHECK(p1.alpha == 4);
  CHECK(p1.i == 1);
  CHECK(p1.beta == 3);
  CHECK(p1.j == 1);
  CHECK(p1.e == -1);
  const TwoAdicProfile p2 = two_adic_profile(23, 216);
  CHECK(p2.alpha == 3);
  CHECK(p2.i == 27);
  CHECK(p2.beta == 3);
  CHECK(p2.j == 3);
  CHECK(p2.e == -1);
  const TwoAdicProfile p3 = two_adic_profile(4402337, 16);
  CHECK(p3.alpha == 4);
  CHECK(p3.i == 1);
  CHECK(p3.e == 1);
  CHECK(p3.beta == oracle::valuation(4402336, 2));
  CHECK(mpz_odd_p(p3.j.get_mpz_t()));
}

TEST_CASE("two-adic profile round trip") {
  for (long n = 1; n < 80; ++n) {
    for (long m = n + 1; m < 120; m += 2) {
      if (std::gcd(m, n) != 1 || (m - n) % 2 == 0) continue;
      const auto p = try_two_adic_profile(m, n);
      if (!p) continue;
      const BigInt even = (BigInt(1) << p->alpha) * p->i;
      const BigInt odd = (BigInt(1) << p->beta) * p->j + p->e;
      CHECK(p->beta >= 2);
      CHECK(mpz_odd_p(p->i.get_mpz_t()));
      CHECK(mpz_odd_p(p->j.get_mpz_t()));
      CHECK(even == (p->n_even ? n : m));
      CHECK(odd == (p->n_even ? m : n));
    }
  }
}

TEST_CASE("F_r(K) values") {
  CHECK(f_ratio(build_instance(2, 1, 2)) == Rational(5, 3));
  CHECK(f_ratio(build_instance(3, 2, 2)) == Rational(13, 5));
  CHECK(f_ratio(build_instance(2, 1, 6)) == Rational(125, 117));
  CHECK(f_r_of_K(build_instance(2, 1, 6)).evaluate(128).contains(Rational(125, 117)));
  // r = 2: (K^2 + 1) / (K^2 - 1)
  const Instance inst = build_instance(9, 4, 2);
  const Rational K(9, 4);
  CHECK(f_ratio(inst) == (K * K + 1) / (K * K - 1));
}
