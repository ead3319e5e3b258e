#include <doctest.h>

#include <cmath>

#include "expcert/bounds.hpp"
#include "oracles.hpp"

using namespace expcert;

namespace {

const BoundReport& find(const std::vector<BoundReport>& bs, const std::string& id) {
  for (const auto& b : bs) {
    if (b.bound_id == id) return b;
  }
  FAIL("missing bound " << id);
  throw std::logic_error("unreachable");
}

double mid(const Real& v) {
  const CertifiedReal iv = v.evaluate(128);
  return (iv.lo.to_double() + iv.hi.to_double()) / 2;
}

bool less(const Real& a, const Real& b) { return certified_compare(a, b).result == Ordering::Less; }

}  // namespace

TEST_CASE("Y bound with 2 | z") {
  const Instance inst = build_instance(7, 4, 2);
  const auto bs = y_upper_even_z(inst);
  const BoundReport& base = find(bs, "y-upper-even-z");
  CHECK(base.value.evaluate(128).contains(Rational(4, 3)));
  CHECK(upper_integer(base.value, base.strict) == 1);
  CHECK(std::isfinite(mid(y_upper_even_z(build_instance(2, 1, 2)).front().value)));
}

TEST_CASE("Y bound with 2 !| z") {
  const Instance inst = build_instance(7, 4, 2);
  const auto bs = y_upper_odd_z(inst);
  const BoundReport& base = find(bs, "y-upper-odd-z");
  CHECK(base.value.evaluate(128).contains(Rational(1)));
  CHECK(upper_integer(base.value, base.strict) == 1);
  CHECK(root_log_condition(build_instance(100, 1, 6)));
}

TEST_CASE("even-z Y bound admits the trivial solution") {
  const long cases[][3] = {{2, 1, 2}, {3, 2, 2}, {7, 4, 2}, {2, 1, 6}, {1003, 2, 6}, {4402337, 16, 2}};
  for (const auto& c : cases) {
    const Instance inst = build_instance(c[0], c[1], static_cast<unsigned long>(c[2]));
    CHECK(upper_integer(find(y_upper_even_z(inst), "y-upper-even-z").value, false) >= 1);
  }
}

TEST_CASE("Delta lower bound") {
  Instance fake;
  fake.m = 243;
  fake.n = 3;
  const auto lb = delta_lower(fake);
  REQUIRE(lb.has_value());
  CHECK(lb->value.exact() == Rational(5));
  CHECK_FALSE(delta_lower(build_instance(2, 1, 2)).has_value());
}

TEST_CASE("linear-forms Delta bound") {
  const double v = mid(delta_upper_linear_forms(Real(100)));
  CHECK(v == doctest::Approx(26e10 * std::log(100.0)).epsilon(1e-12));
  CHECK(v == doctest::Approx(1.197e12).epsilon(1e-3));
}

TEST_CASE("Matveev-type constant") {
  // D = 2, A1 = 1 (log c factored out), A2 = pi, log(eB) = 3 (times log z)
  const Real v = matveev_lower_with_log_eB(2, Real(1), Real::pi(), Real(3));
  const double magnitude = -mid(v);
  CHECK(std::abs(magnitude - 64832990895.0) / 64832990895.0 < 0.005);
  CHECK(mid(matveev_lower(2, Real(1), Real(1), BigInt(1))) ==
        doctest::Approx(-std::pow(2, 2.5) * std::exp(2) * std::pow(30, 5) * 4 * std::log(2 * std::exp(1.0))));
  CHECK(less(matveev_lower(2, Real(2), Real(1), BigInt(10)), matveev_lower(2, Real(1), Real(1), BigInt(10))));
  CHECK(less(matveev_lower(2, Real(1), Real(1), BigInt(100)), matveev_lower(2, Real(1), Real(1), BigInt(10))));
}

TEST_CASE("Laurent-type bound") {
  CHECK(mid(laurent_lower(1, Real(2), Real(3), Real(1))) == doctest::Approx(-25.2 * 100 * 6));
  CHECK(less(laurent_lower(1, Real(1), Real(1), Real(BigInt("1000000000000"))),
             laurent_lower(1, Real(1), Real(1), Real(BigInt("100000000000")))));
}

TEST_CASE("y = 1 threshold s solves log(2s + 1) + 0.38 = 10") {
  const Real s = y1_s_threshold();
  CHECK(less(s, Real::decimal("7531.1")));
  const Real lhs = log(Real(2) * s + Real(1)) + Real::decimal("0.38");
  const CertifiedReal iv = lhs.evaluate(256);
  CHECK(iv.contains(Rational(10)));
  // the linear-form bound is flat below the threshold
  const Real log_a = log(Real(3)), log_c = log(Real(5));
  CHECK(mid(y1_linear_form_lower(Real(100), log_a, log_c)) == doctest::Approx(-25.2 * 100 * std::log(3) * std::log(5)));
}

TEST_CASE("y = 1 bounds and eliminations") {
  const Y1Analysis a = y1_bounds(build_instance(2, 1, 2));
  const BoundReport& x = find(a.bounds, "y1-x-upper-r2");
  CHECK(mid(x.value) == doctest::Approx(1534 * std::log(5.0)));
  CHECK(upper_integer(x.value, true) == 2468);

  const Y1Analysis big = y1_bounds(build_instance(57 * 2 + 1, 2, 2));  // m = 115 > 56 n
  CHECK(big.eliminated);
  CHECK(big.route == "k-at-least-56");

  BigInt n94;
  mpz_ui_pow_ui(n94.get_mpz_t(), 6, 94);
  const auto cmp = prime_part_threshold(n94);
  REQUIRE(cmp.has_value());
  CHECK(cmp->result == Ordering::Greater);
  CHECK_FALSE(prime_part_threshold(3).has_value());
}

TEST_CASE("s(n) and t(n) spot values") {
  for (long n : {4L, 6L, 64L, 1000L, 10000L}) {
    CHECK(less(s_of_n(n), Real::decimal("1.2052")));
    CHECK(less(t_of_n(n), sqrt(Real(2))));
    CHECK(less(Real(0), t_of_n(n)));
    // floating-point cross-check of the formula
    const double dn = static_cast<double>(n);
    const double L = std::log(1 + 2 * dn * dn / (6 * dn + 9));
    const double t = std::sqrt(1.0 / 1534 + (1 + 4 / dn) * L) * L / std::pow(std::log(dn), 1.5);
    CHECK(mid(t_of_n(n)) == doctest::Approx(t).epsilon(1e-9));
    const double lq = 11 * std::log(dn) - std::log(4.0);
    const double d = std::log(std::pow(dn, 11) - 4 * dn * dn);
    const double s = (2 * d + 5 * std::log(dn) + 2 * lq) / (2 * lq * (d + 2 * std::log(dn) - std::log(4.0)) -
                                                         2 * std::log(2.0) * std::log(dn)) * std::log(dn);
    CHECK(mid(s_of_n(n)) == doctest::Approx(s).epsilon(1e-9));
  }
  CHECK_THROWS(s_of_n(3));
}

TEST_CASE("nu and eta") {
  const Instance pow2 = build_instance(33, 16, 2);
  const NuEta a = nu_eta(pow2, 4);
  CHECK(less(a.nu, Real::decimal("1.25")));

  BigInt m56;
  mpz_ui_pow_ui(m56.get_mpz_t(), 112, 10);
  const NuEta b = nu_eta(build_instance(m56 + 1, 56, 2), 3);
  CHECK(less(b.eta, Real(2)));

  BigInt m52;
  mpz_ui_pow_ui(m52.get_mpz_t(), 104, 10);
  const NuEta c = nu_eta(build_instance(m52 + 1, 52, 2), 2);
  CHECK(less(c.eta, Real::decimal("9.6")));

  CHECK_THROWS_AS(nu_eta(build_instance(15, 14, 2), 1), EtaUndefined);
}

TEST_CASE("F_r(K) upper bound") {
  CHECK(f_r_upper(Rational(2), 2).exact() == Rational(49, 17));
  CHECK(Rational(5, 3) < Rational(49, 17));
  CHECK(less(f_r_upper(Rational(BigInt("1000000000")), 2), Real::decimal("1.000001")));
  CHECK(certified_compare(log(f_r_upper(Rational(56), 2)) * Real(1534), Real(1)).result != Ordering::Indeterminate);
  for (long m = 13; m < 200; m += 2) {
    const Instance inst = build_instance(m, 2, 6);
    if (!(inst.m > 2 * 6 * inst.n)) continue;
    CHECK(less(Real(f_ratio(inst)), f_r_upper(inst.K(), 6)));
  }
}
