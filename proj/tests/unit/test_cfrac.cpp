#include <doctest.h>

#include <cmath>

#include "expcert/cfrac.hpp"
#include "oracles.hpp"

using namespace expcert;

TEST_CASE("expansion of log 3 / log 5") {
  const ContinuedFraction cf = cf_expand(3, 5, 100);
  REQUIRE(cf.size() >= 5);
  const std::vector<BigInt> head{0, 1, 2, 6, 1};
  const std::vector<BigInt> dens{1, 1, 3, 19, 22};
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(cf.partial_quotients[k] == head[k]);
    CHECK(cf.denominators[k] == dens[k]);
    CHECK(cf.certified[k]);
  }
  CHECK(cf.denominators.back() > 100);
  CHECK_FALSE(cf.rational);
  CHECK_FALSE(cf.truncated);
}

TEST_CASE("terms agree with a series oracle at four times the precision") {
  const BigInt limit("1000000000000000000000000");
  const ContinuedFraction cf = cf_expand(3, 5, limit);
  REQUIRE(cf.certified_count() >= 20);
  const auto [lo, hi] = oracle::log_ratio(3, 5, 4 * cf.precision_bits);
  const std::vector<oracle::Z> ref = oracle::cf_common_prefix(lo, hi);
  REQUIRE(ref.size() >= cf.certified_count());
  for (std::size_t k = 0; k < cf.size(); ++k) {
    if (cf.certified[k]) CHECK(cf.partial_quotients[k] == ref[k]);
  }
}

TEST_CASE("convergent invariants") {
  for (auto [a, c] : std::vector<std::pair<long, long>>{{3, 5}, {5, 13}, {7, 25}, {119, 169}, {4402337, 9999999}}) {
    const ContinuedFraction cf = cf_expand(a, c, BigInt("100000000000000"));
    const CertifiedReal gamma = (log(Real(a)) / log(Real(c))).evaluate(512);
    for (std::size_t k = 0; k < cf.size(); ++k) {
      if (!cf.certified[k]) continue;
      CHECK(cf.denominators[k] >= oracle::fibonacci(k + 1));
      if (k >= 2) {
        CHECK(cf.denominators[k] == cf.partial_quotients[k] * cf.denominators[k - 1] + cf.denominators[k - 2]);
        CHECK(cf.numerators[k] == cf.partial_quotients[k] * cf.numerators[k - 1] + cf.numerators[k - 2]);
      }
      if (k >= 2) CHECK(cf.denominators[k] > cf.denominators[k - 1]);
      if (k + 1 < cf.size() && cf.certified[k + 1]) {
        const Rational conv(cf.numerators[k], cf.denominators[k]);
        const Rational bound(1, BigInt(cf.denominators[k] * cf.denominators[k + 1]));
        const Rational lo = gamma.lo.to_rational() - conv;
        const Rational hi = gamma.hi.to_rational() - conv;
        CHECK(abs(lo) < bound);
        CHECK(abs(hi) < bound);
      }
    }
  }
}

TEST_CASE("dependent bases give an exact finite expansion") {
  const ContinuedFraction cf = cf_expand(4, 8, 100);
  CHECK(cf.rational);
  CHECK(cf.partial_quotients == std::vector<BigInt>{0, 1, 2});
  CHECK_THROWS_AS(cf_expand(5, 3, 100), std::invalid_argument);
}

TEST_CASE("starting precision does not change certified terms") {
  const ContinuedFraction a = cf_expand(5, 13, BigInt("1000000000000"), PrecisionSchedule{64, 65536});
  const ContinuedFraction b = cf_expand(5, 13, BigInt("1000000000000"), PrecisionSchedule{512, 65536});
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    if (a.certified[k] && b.certified[k]) CHECK(a.partial_quotients[k] == b.partial_quotients[k]);
  }
}

TEST_CASE("Fibonacci helpers") {
  for (std::size_t k = 0; k < 60; ++k) CHECK(fibonacci(k) == oracle::fibonacci(k));
  CHECK(fibonacci_index_bound(6466) == 19);  // F_20 = 6765
  CHECK(fibonacci_index_bound(1) == 2);  // F_3 = 2
}

TEST_CASE("convergent scan") {
  const Instance inst = build_instance(3, 2, 2);
  const Scan scan = convergent_scan(inst, Real(2521));
  CHECK(scan.q_limit == 6466);
  CHECK(scan.index_bound == 19);
  for (const auto& e : scan.entries) {
    CHECK(e.s < scan.index_bound);
    CHECK(e.q_s >= 4);
    CHECK(e.q_s <= scan.q_limit);
    CHECK(e.holds.has_value());
  }

  const Scan s2 = convergent_scan(build_instance(2, 1, 2), Real(1534));
  bool saw19 = false;
  for (const auto& e : s2.entries) {
    if (e.q_s != 19) continue;
    saw19 = true;
    REQUIRE(e.comparison.has_value());
    const double rhs = 19 * std::log(3.0) + std::log(std::log(5.0)) - std::log(4.0) - std::log(19.0);
    CHECK(std::stod(e.comparison->rhs_interval.substr(1)) == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(e.next_quotient == 1);
    CHECK(*e.holds == (std::log(3.0) > rhs));
  }
  CHECK(saw19);
}

TEST_CASE("denominator growth check") {
  const ContinuedFraction cf = cf_expand(3, 5, 100);
  CHECK(denominator_growth_check(cf, 2, 3).result == Ordering::Greater);  // 2 * 19 > 3^1
  CHECK(denominator_growth_check(cf, 3, 3).result == Ordering::Less);     // 2 * 22 < 3^17
  CHECK_THROWS_AS(denominator_growth_check(cf, cf.size() - 1, 3), std::out_of_range);
}

TEST_CASE("y = 1 elimination") {
  const Instance inst = build_instance(3, 2, 2);
  const EliminationResult res = eliminate_y1(inst);
  CHECK(res.verdict == Elimination::Eliminated);
  CHECK(res.small_z_excluded);
  CHECK(res.witnesses.empty());
  for (const auto& t : oracle::brute_solutions(inst.a, inst.b, inst.c, 40, 1, 40)) CHECK(t.y != 1);
  CHECK_THROWS_AS(eliminate_y1(build_instance(2, 1, 6)), std::invalid_argument);
  CHECK(to_string(Elimination::NotEliminated) == "not-eliminated");
}
