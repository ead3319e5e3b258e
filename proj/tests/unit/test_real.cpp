#include <doctest.h>

#include <random>

#include "expcert/real.hpp"
#include "oracles.hpp"

using namespace expcert;

namespace {

// Oracle enclosure of log x at `bits` fractional bits as two rationals.
std::pair<Rational, Rational> oracle_log(const BigInt& x, unsigned long bits) {
  const oracle::Fixed f = oracle::log_int(x, bits);
  Rational lo(f.lo, BigInt(1) << bits), hi(f.hi, BigInt(1) << bits);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

bool overlaps(const CertifiedReal& iv, const std::pair<Rational, Rational>& o) {
  return iv.lo.to_rational() <= o.second && o.first <= iv.hi.to_rational();
}

}  // namespace

TEST_CASE("certified log of 1 contains 0") {
  const CertifiedReal iv = certified_log(Rational(1), 128);
  CHECK(iv.lo.to_rational() <= 0);
  CHECK(iv.hi.to_rational() >= 0);
}

TEST_CASE("certified log of 5 contains the series value") {
  const CertifiedReal iv = certified_log(Rational(5), 64);
  const auto o = oracle_log(5, 256);
  CHECK(iv.lo.to_rational() <= o.first);
  CHECK(o.second <= iv.hi.to_rational());
  CHECK(iv.contains(Rational(16094379, 10000000)) == false);  // 1.6094379 < log 5
  CHECK(iv.lo.to_double() == doctest::Approx(1.6094379124341).epsilon(1e-12));
}

TEST_CASE("certified log width contract and containment at 4x precision") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const BigInt x = BigInt(static_cast<unsigned long>(rng() % 1000000000ULL + 2));
    for (unsigned long bits : {64UL, 128UL, 256UL}) {
      const CertifiedReal iv = certified_log(Rational(x), bits);
      const auto o = oracle_log(x, 4 * bits);
      CHECK(iv.lo.to_rational() <= o.first);
      CHECK(o.second <= iv.hi.to_rational());
      const double logx = std::log(x.get_d());
      const double allowed = std::ldexp(1.0, 1 - static_cast<int>(bits)) * std::max(1.0, logx);
      CHECK(iv.width().to_double(MPFR_RNDU) <= allowed);
    }
  }
}

TEST_CASE("width shrinks as precision doubles") {
  const Real v = log(Real(7)) / log(Real(11));
  double prev = 1.0;
  for (unsigned long bits = 64; bits <= 1024; bits *= 2) {
    const double w = v.evaluate(bits).width().to_double(MPFR_RNDU);
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("certified compare examples") {
  CHECK(certified_compare(log(Real(3)), log(Real(5))).result == Ordering::Less);
  const Comparison eq = certified_compare(log(Real(BigInt(15625))), log(Real(BigInt(117 * 117 + 44 * 44))));
  CHECK(eq.result == Ordering::Equal);
  CHECK(eq.exact_path);
  CHECK(certified_compare(Real::decimal("7531.1") * log(Real(5)), Real(2)).result == Ordering::Greater);
}

TEST_CASE("certified compare agrees with exact rational comparison") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 300; ++t) {
    const Rational a(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
    const Rational b(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
    const Ordering o = certified_compare(Real(Rational(a)), Real(Rational(b))).result;
    if (a < b) CHECK(o == Ordering::Less);
    if (a > b) CHECK(o == Ordering::Greater);
    if (a == b) CHECK(o == Ordering::Equal);
  }
}

TEST_CASE("indeterminate at the cap instead of a wrong strict answer") {
  // log 2 + log 3 - log 6 is zero but not recognised as exact.
  const Real zero = log(Real(2)) + log(Real(3)) - log(Real(6));
  const Comparison c = certified_compare(zero, Real(0), PrecisionSchedule{64, 256});
  CHECK(c.result == Ordering::Indeterminate);
}

TEST_CASE("decimal literals are exact") {
  CHECK(Real::decimal("26e10").exact() == Rational(BigInt("260000000000")));
  CHECK(Real::decimal("7531.1").exact() == Rational(75311, 10));
  CHECK(Real::decimal("1e15").exact() == Rational(BigInt("1000000000000000")));
}

TEST_CASE("integer rounding is conservative") {
  CHECK(upper_integer(Real(Rational(7, 2)), false) == 3);
  CHECK(upper_integer(Real(3), true) == 2);
  CHECK(upper_integer(Real(3), false) == 3);
  CHECK(lower_integer(Real(Rational(7, 2)), false) == 4);
  CHECK(lower_integer(Real(3), true) == 4);
  const BigInt u = upper_integer(log(Real(1000)), false);
  CHECK(u >= 6);  // log 1000 = 6.907...
  CHECK(u <= 7);
}
