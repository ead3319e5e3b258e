#include "expcert/triples.hpp"

namespace expcert {

std::pair<BigInt, BigInt> gaussian_pow(const BigInt& re, const BigInt& im, unsigned long r) {
  BigInt res_re = 1;
  BigInt res_im = 0;
  BigInt base_re = re;
  BigInt base_im = im;
  while (r > 0) {
    if (r & 1) {
      const BigInt t = res_re * base_re - res_im * base_im;
      res_im = res_re * base_im + res_im * base_re;
      res_re = t;
    }
    r >>= 1;
    if (r > 0) {
      const BigInt t = base_re * base_re - base_im * base_im;
      base_im = 2 * base_re * base_im;
      base_re = t;
    }
  }
  return {res_re, res_im};
}

Instance build_instance(const BigInt& m, const BigInt& n, unsigned long r) {
  if (n < 1) throw InvalidInstance("n >= 1");
  if (m <= n) throw InvalidInstance("m > n");
  if (gcd(m, n) != 1) throw InvalidInstance("gcd(m, n) = 1");
  if (mpz_even_p(BigInt(m - n).get_mpz_t())) throw InvalidInstance("m - n odd");
  if (r < 2) throw InvalidInstance("r >= 2");
  if (r % 2 != 0) throw InvalidInstance("r even");

  Instance inst;
  inst.m = m;
  inst.n = n;
  inst.r = r;
  inst.c = m * m + n * n;
  auto [re, im] = gaussian_pow(m, n, r);
  inst.a = abs(re);
  inst.b = abs(im);

  BigInt cr;
  mpz_pow_ui(cr.get_mpz_t(), inst.c.get_mpz_t(), r);
  if (inst.a * inst.a + inst.b * inst.b != cr) {
    throw std::logic_error("internal fault: a^2 + b^2 != c^r");
  }
  if (gcd(inst.a, inst.b) != 1 || mpz_odd_p(inst.b.get_mpz_t())) {
    throw std::logic_error("internal fault: (a, b) not coprime with b even");
  }
  return inst;
}

bool positivity_condition(const Instance& inst, const PrecisionSchedule& schedule) {
  if (inst.r == 2) return true;
  if (inst.r % 4 != 2) return false;
  const Comparison cmp = certified_compare(Real(inst.m) * Real::pi(),
                                           Real(BigInt(BigInt(2 * inst.r) * inst.n)), schedule);
  if (cmp.result == Ordering::Indeterminate) {
    throw IndeterminateError("positivity condition: cannot separate m*pi from 2rn");
  }
  return cmp.result == Ordering::Greater;
}

std::optional<TwoAdicProfile> try_two_adic_profile(const BigInt& m, const BigInt& n) {
  if (m < 1 || n < 1) return std::nullopt;
  if (mpz_even_p(BigInt(m - n).get_mpz_t())) return std::nullopt;
  TwoAdicProfile p;
  p.n_even = mpz_even_p(n.get_mpz_t()) != 0;
  const BigInt& even = p.n_even ? n : m;
  const BigInt& odd = p.n_even ? m : n;
  p.alpha = ord_p(even, 2);
  p.i = even >> p.alpha;
  p.e = mpz_fdiv_ui(odd.get_mpz_t(), 4) == 1 ? 1 : -1;
  const BigInt shifted = odd - p.e;
  if (shifted == 0) return std::nullopt;
  p.beta = ord_p(shifted, 2);
  p.j = abs(shifted) >> p.beta;
  return p;
}

TwoAdicProfile two_adic_profile(const BigInt& m, const BigInt& n) {
  if (mpz_even_p(BigInt(m - n).get_mpz_t())) {
    throw std::invalid_argument("two_adic_profile: m - n must be odd");
  }
  auto p = try_two_adic_profile(m, n);
  if (!p) {
    throw std::invalid_argument("two_adic_profile: odd member " + to_string(mpz_even_p(n.get_mpz_t()) ? m : n) +
                                " leaves no 2^beta * j part");
  }
  return *p;
}

unsigned long even_member_valuation(const Instance& inst) {
  return ord_p(mpz_even_p(inst.n.get_mpz_t()) ? inst.n : inst.m, 2);
}

Rational f_ratio(const Instance& inst) {
  BigInt half;
  mpz_pow_ui(half.get_mpz_t(), inst.c.get_mpz_t(), inst.r / 2);
  Rational f(half, inst.a);
  f.canonicalize();
  return f;
}

Real f_r_of_K(const Instance& inst) { return Real(f_ratio(inst)); }

}  // namespace expcert
