#include "expcert/cfrac.hpp"

#include <algorithm>

namespace expcert {

namespace {

BigInt floor_q(const Rational& x) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

// Quotients shared by every point of [lo, hi], stopping once the running
// denominator passes q_limit.
std::vector<BigInt> common_prefix(Rational lo, Rational hi, const BigInt& q_limit) {
  std::vector<BigInt> out;
  BigInt q_prev = 0;
  BigInt q = 1;
  while (true) {
    const BigInt fl = floor_q(lo);
    if (fl != floor_q(hi)) break;
    Rational fx = lo - fl;
    Rational fy = hi - fl;
    if (fx == 0 || fy == 0) break;
    out.push_back(fl);
    if (out.size() > 1) {
      const BigInt next = fl * q + q_prev;
      q_prev = q;
      q = next;
      if (q > q_limit) break;
    }
    lo = 1 / fy;
    hi = 1 / fx;
    lo.canonicalize();
    hi.canonicalize();
  }
  return out;
}

std::vector<BigInt> exact_expansion(Rational x) {
  std::vector<BigInt> out;
  while (true) {
    const BigInt f = floor_q(x);
    out.push_back(f);
    const Rational frac = x - f;
    if (frac == 0) break;
    x = 1 / frac;
    x.canonicalize();
  }
  return out;
}

void fill_convergents(ContinuedFraction& cf) {
  BigInt p_prev = 1, p = cf.partial_quotients.empty() ? BigInt(0) : cf.partial_quotients[0];
  BigInt q_prev = 0, q = 1;
  cf.numerators.clear();
  cf.denominators.clear();
  for (std::size_t k = 0; k < cf.partial_quotients.size(); ++k) {
    if (k > 0) {
      const BigInt& ak = cf.partial_quotients[k];
      BigInt np = ak * p + p_prev;
      BigInt nq = ak * q + q_prev;
      p_prev = p;
      q_prev = q;
      p = np;
      q = nq;
    }
    cf.numerators.push_back(p);
    cf.denominators.push_back(q);
  }
}

bool passes(const std::vector<BigInt>& terms, const BigInt& q_limit) {
  BigInt q_prev = 0, q = 1;
  for (std::size_t k = 1; k < terms.size(); ++k) {
    const BigInt next = terms[k] * q + q_prev;
    q_prev = q;
    q = next;
    if (q > q_limit) return true;
  }
  return false;
}

}  // namespace

std::size_t ContinuedFraction::certified_count() const {
  return static_cast<std::size_t>(std::count(certified.begin(), certified.end(), true));
}

ContinuedFraction cf_expand(const BigInt& a, const BigInt& c, const BigInt& q_limit,
                            const PrecisionSchedule& schedule) {
  if (!(1 < a && a < c)) throw std::invalid_argument("cf_expand requires 1 < a < c");
  ContinuedFraction cf;

  const PerfectPower pa = perfect_power_root(a);
  const PerfectPower pc = perfect_power_root(c);
  if (pa.base == pc.base) {
    cf.rational = true;
    cf.partial_quotients = exact_expansion(Rational(pa.exponent, pc.exponent));
    cf.certified.assign(cf.partial_quotients.size(), true);
    fill_convergents(cf);
    return cf;
  }

  const Real gamma = log(Real(a)) / log(Real(c));
  auto prefix_at = [&](unsigned long bits) {
    const CertifiedReal iv = gamma.evaluate(bits);
    return common_prefix(iv.lo.to_rational(), iv.hi.to_rational(), q_limit);
  };

  std::vector<BigInt> prev = prefix_at(schedule.start_bits);
  unsigned long bits = schedule.start_bits;
  std::vector<BigInt> agreed;
  while (true) {
    const unsigned long next_bits = bits * 2;
    std::vector<BigInt> cur = prefix_at(next_bits);
    agreed.clear();
    for (std::size_t k = 0; k < std::min(prev.size(), cur.size()) && prev[k] == cur[k]; ++k) {
      agreed.push_back(cur[k]);
    }
    cf.precision_bits = next_bits;
    if (passes(agreed, q_limit)) break;
    if (next_bits >= schedule.cap_bits) {
      cf.truncated = true;
      break;
    }
    prev = std::move(cur);
    bits = next_bits;
  }

  cf.partial_quotients = agreed;
  cf.certified.assign(agreed.size(), true);
  if (cf.truncated) {
    // Best guess for the next term, flagged so consumers cannot rely on it.
    const CertifiedReal iv = gamma.evaluate(cf.precision_bits);
    Rational mid = (iv.lo.to_rational() + iv.hi.to_rational()) / 2;
    mid.canonicalize();
    const std::vector<BigInt> guess = exact_expansion(mid);
    if (guess.size() > agreed.size()) {
      cf.partial_quotients.push_back(guess[agreed.size()]);
      cf.certified.push_back(false);
    }
  }
  fill_convergents(cf);
  return cf;
}

BigInt fibonacci(std::size_t k) {
  BigInt f;
  mpz_fib_ui(f.get_mpz_t(), k);
  return f;
}

std::size_t fibonacci_index_bound(const BigInt& q_limit) {
  std::size_t k = 0;
  while (fibonacci(k + 1) <= q_limit) ++k;
  return k;
}

Scan convergent_scan(const Instance& inst, const Real& multiplier, const PrecisionSchedule& schedule) {
  Scan scan;
  const Real log_c = log(Real(inst.c));
  scan.q_limit = upper_integer(multiplier * log_c, true, schedule);
  scan.index_bound = fibonacci_index_bound(scan.q_limit);
  scan.cf = cf_expand(inst.a, inst.c, scan.q_limit, schedule);

  const Real log_a = log(Real(inst.a));
  const Real log_b = log(Real(inst.b));
  const Real loglog_c = log(log_c);
  const ContinuedFraction& cf = scan.cf;
  for (std::size_t s = 0; s < cf.size(); ++s) {
    const BigInt& q = cf.denominators[s];
    if (q < 4) continue;
    if (q > scan.q_limit) break;
    ScanEntry e;
    e.s = s;
    e.q_s = q;
    if (s + 1 >= cf.size()) {
      // A finite expansion has no a_(s+1); a truncated one leaves it unknown.
      if (cf.rational) break;
      scan.entries.push_back(e);
      continue;
    }
    if (!cf.certified[s] || !cf.certified[s + 1]) {
      e.next_quotient = cf.partial_quotients[s + 1];
      scan.entries.push_back(e);
      continue;
    }
    e.next_quotient = cf.partial_quotients[s + 1];
    const Real lhs = log(Real(BigInt(e.next_quotient + 2)));
    const Real rhs = Real(q) * log_a + loglog_c - log_b - log(Real(q));
    Comparison cmp = certified_compare(lhs, rhs, schedule);
    if (cmp.result == Ordering::Greater) {
      e.holds = true;
    } else if (cmp.result != Ordering::Indeterminate) {
      e.holds = false;
    }
    e.comparison = std::move(cmp);
    scan.entries.push_back(e);
  }
  return scan;
}

Comparison denominator_growth_check(const ContinuedFraction& cf, std::size_t s, const BigInt& a,
                         const PrecisionSchedule& schedule) {
  if (s + 1 >= cf.size() || !cf.certified[s + 1]) {
    throw std::out_of_range("denominator_growth_check: a_(s+1) not certified");
  }
  const BigInt& qs = cf.denominators[s];
  const Real lhs = log(Real(BigInt(2 * cf.denominators[s + 1])));
  const Real rhs = Real(BigInt(qs - 2)) * log(Real(a));
  return certified_compare(lhs, rhs, schedule);
}

std::string to_string(Elimination e) {
  switch (e) {
    case Elimination::Eliminated:
      return "eliminated";
    case Elimination::NotEliminated:
      return "not-eliminated";
    case Elimination::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

EliminationResult eliminate_y1(const Instance& inst, const Real& multiplier, const PrecisionSchedule& schedule) {
  if (inst.r != 2) throw std::invalid_argument("eliminate_y1 requires r = 2");
  EliminationResult res;
  res.scan = convergent_scan(inst, multiplier, schedule);

  // z = 1 is impossible since a^x + b > c; z = 2 forces x = 3 because
  // c < a^2, and a^3 + b = c^2 is checked directly.
  BigInt a3 = inst.a * inst.a * inst.a;
  res.small_z_excluded = a3 + inst.b != inst.c * inst.c;

  bool undecided = res.scan.cf.truncated;
  for (const ScanEntry& e : res.scan.entries) {
    if (!e.holds.has_value()) {
      undecided = true;
      res.witnesses.push_back(e.s);
    } else if (*e.holds) {
      res.witnesses.push_back(e.s);
    }
  }
  const bool any_holds = std::any_of(res.scan.entries.begin(), res.scan.entries.end(),
                                     [](const ScanEntry& e) { return e.holds.value_or(false); });
  if (!res.small_z_excluded) {
    res.verdict = Elimination::NotEliminated;
    res.note = "a^3 + b = c^2";
  } else if (any_holds) {
    res.verdict = Elimination::NotEliminated;
    res.note = "inequality holds at some convergent";
  } else if (undecided) {
    res.verdict = Elimination::Indeterminate;
    res.note = "uncertified convergent inside the scan range";
  } else {
    res.verdict = Elimination::Eliminated;
    res.note = "inequality fails at every convergent with 4 <= q_s <= " + to_string(res.scan.q_limit);
  }
  return res;
}

}  // namespace expcert
