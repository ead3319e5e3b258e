#include "expcert/bounds.hpp"

namespace expcert {

namespace {

Real log2r() { return log(Real(2)); }

Real rl(unsigned long v) { return Real(static_cast<long>(v)); }

BoundReport report(std::string id, std::string subject, Direction dir, bool strict, Real value,
                   Assumptions as, std::string note = {}) {
  BoundReport b;
  b.bound_id = std::move(id);
  b.subject = std::move(subject);
  b.direction = dir;
  b.strict = strict;
  b.value = std::move(value);
  b.assumptions = as;
  b.note = std::move(note);
  return b;
}

bool divides(unsigned long p, const BigInt& n) { return mpz_divisible_ui_p(n.get_mpz_t(), p) != 0; }

// prod over q in S of r_(q) * n_(q)
BigInt prime_part_product(const Instance& inst, std::initializer_list<unsigned long> set) {
  BigInt prod = 1;
  for (unsigned long q : set) {
    if (!divides(q, inst.n)) continue;
    prod *= p_part(BigInt(inst.r), BigInt(q)) * p_part(inst.n, BigInt(q));
  }
  return prod;
}

Real log_F(const Instance& inst) { return log(Real(f_ratio(inst))); }

}  // namespace

std::string to_string(Direction d) { return d == Direction::Upper ? "upper" : "lower"; }

std::vector<BoundReport> y_upper_even_z(const Instance& inst) {
  const unsigned long alpha = even_member_valuation(inst);
  const Assumptions as{Tag::ZEven};
  std::vector<BoundReport> out;
  out.push_back(report("y-upper-even-z", "Y", Direction::Upper, false,
                       log(Real(BigInt(4 * (inst.c - 1)))) / (rl(2 * (alpha + 1)) * log2r()), as));

  const bool any = divides(2, inst.n) || divides(3, inst.n) || divides(5, inst.n);
  if (any) {
    const long delta1 = divides(2, inst.n) ? 2 : 1;
    const BigInt prod = prime_part_product(inst, {2, 3, 5});
    out.push_back(report("y-upper-even-z-refined", "Y", Direction::Upper, false,
                         log(Real(BigInt(delta1 * delta1 * (inst.c - 1)))) / (Real(2) * log(Real(prod))), as,
                         "holds unless Y = 1"));
  }
  return out;
}

bool root_log_condition(const Instance& inst, const PrecisionSchedule& schedule) {
  const Real c(inst.c);
  return certified_compare(sqrt(c), rl(inst.r) * log(c), schedule).result == Ordering::Greater;
}

BigInt min_prime_part_lower(const BigInt& a, std::uint64_t divisor_bound) {
  if (a <= 1) return a;
  const Factorization f = trial_factor(a, divisor_bound);
  std::optional<BigInt> best;
  auto consider = [&](const BigInt& v) {
    if (!best || v < *best) best = v;
  };
  for (const auto& pp : f.factors) {
    BigInt part;
    mpz_pow_ui(part.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    consider(part);
  }
  switch (f.cofactor_status) {
    case Factorization::Cofactor::One:
      break;
    case Factorization::Cofactor::Prime:
    case Factorization::Cofactor::ProbablePrime:
      consider(f.cofactor);
      break;
    case Factorization::Cofactor::Unfactored:
      consider(BigInt(divisor_bound) + 1);
      break;
  }
  return *best;
}

std::vector<BoundReport> y_upper_odd_z(const Instance& inst, std::vector<std::string>* skipped,
                                       std::uint64_t divisor_bound, const PrecisionSchedule& schedule) {
  const unsigned long alpha = even_member_valuation(inst);
  const Assumptions as{Tag::ZOdd};
  std::vector<BoundReport> out;
  out.push_back(report("y-upper-odd-z", "Y", Direction::Upper, false,
                       log(Real(BigInt(inst.c - 1))) / (rl(2 * (alpha + 1)) * log2r()), as));

  auto skip = [&](const std::string& why) {
    if (skipped) skipped->push_back(why);
  };
  if (!root_log_condition(inst, schedule)) {
    skip("y-upper-odd-z-refined: sqrt(c)/log c > r not certified");
    return out;
  }

  const BigInt a_hat = min_prime_part_lower(inst.a, divisor_bound);
  if (a_hat > 1 && inst.c > 5) {
    out.push_back(report("x-upper-odd-z", "X", Direction::Upper, false,
                         log(Real(BigInt(inst.c - 4))) / log(Real(a_hat)), as, "holds unless Y = 1"));
  } else {
    skip("x-upper-odd-z: min prime part of a or c - 4 too small");
  }

  if (divides(5, inst.n)) {
    skip("y-upper-odd-z-refined: 5 | n leaves z_(5) unbounded");
    return out;
  }
  const long delta2 = divides(3, inst.n) ? 3 : 1;
  BigInt denom = prime_part_product(inst, {3});
  denom <<= alpha + 1;
  out.push_back(report("y-upper-odd-z-refined", "Y", Direction::Upper, false,
                       log(Real(BigInt(delta2 * delta2 * (inst.c - 1)))) / (Real(2) * log(Real(denom))), as,
                       "holds unless Y = 1; z_(3) <= 3 taken as worst case"));
  return out;
}

std::optional<BoundReport> delta_lower(const Instance& inst) {
  if (inst.n == 1) return std::nullopt;
  return report("delta-lower", "Delta", Direction::Lower, true, log_ratio(inst.m, inst.n),
                Assumptions{Tag::DeltaPositive});
}

std::vector<BoundReport> delta_bounds(const Instance& inst, bool z_even, OrderBranch order,
                                      const std::optional<BigInt>& y_max, std::vector<std::string>* skipped,
                                      const PrecisionSchedule& schedule) {
  Assumptions as{Tag::DeltaPositive, z_even ? Tag::ZEven : Tag::ZOdd,
                 order == OrderBranch::RXLessZ ? Tag::RXLessZ : Tag::RXGreaterZ};
  auto skip = [&](const std::string& why) {
    if (skipped) skipped->push_back(why);
  };
  std::vector<BoundReport> out;
  if (auto lo = delta_lower(inst)) {
    lo->assumptions = as;
    out.push_back(*lo);
  }

  const Real log_c = log(Real(inst.c));
  const Real log_b = log(Real(inst.b));
  if (order == OrderBranch::RXGreaterZ) {
    if (z_even) {
      if (inst.a <= 1) {
        skip("delta-upper-rx-greater-even-z: a = 1");
        return out;
      }
      const Real value = log(Real(BigInt(4 * inst.c))) * (Real(2) * log_b) * log_F(inst) /
                         (log_c * log(Real(inst.a)) * (rl(even_member_valuation(inst) + 1) * log2r()));
      out.push_back(report("delta-upper-rx-greater-even-z", "Delta", Direction::Upper, true, value, as));
    } else if (root_log_condition(inst, schedule)) {
      out.push_back(report("delta-upper-rx-greater-odd-z", "Delta", Direction::Upper, true,
                           Real(2) * log_F(inst) / log(Real(3)), as));
    } else {
      skip("delta-upper-rx-greater-odd-z: sqrt(c)/log c > r not certified");
    }
    return out;
  }

  if (!y_max) {
    skip("delta-upper-rx-less-z: no upper bound on Y");
    return out;
  }
  const Real Y(*y_max);
  const Real ratio = log_b / log_c;
  out.push_back(report("z-upper-rx-less-z", "z", Direction::Upper, true,
                       Real(2) * ratio * Y + log2r() / log_c, as, "Y replaced by its upper bound"));
  out.push_back(report("z-upper-ry", "z", Direction::Upper, true, rl(inst.r) * Y, as,
                       "Y replaced by its upper bound"));
  if (z_even) {
    out.push_back(report("delta-upper-rx-less-even-z", "Delta", Direction::Upper, true,
                         ratio * Y + log2r() / (Real(2) * log_c) - Real(1), as, "Y replaced by its upper bound"));
  } else {
    out.push_back(report("delta-upper-rx-less-odd-z", "Delta", Direction::Upper, true,
                         Real(2) * ratio * Y + log2r() / log_c - rl(inst.r), as,
                         "Y replaced by its upper bound, X by 1"));
  }
  return out;
}

Real delta_upper_linear_forms(const Real& z) { return Real::decimal("26e10") * log(z); }

Real min_power_exponent_linear_forms(const Real& z) {
  return z / Real(2) - Real::decimal("6.5e10") * log(z);
}

Real matveev_lower_with_log_eB(unsigned long D, const Real& A1, const Real& A2, const Real& log_eB) {
  const Real c = Real(4) * sqrt(Real(2)) * exp(Real(2)) * Real(24'300'000);
  const Real d = rl(D);
  return -(c * d * d * A1 * A2 * (Real(1) + log(d)) * log_eB);
}

Real matveev_lower(unsigned long D, const Real& A1, const Real& A2, const BigInt& B) {
  return matveev_lower_with_log_eB(D, A1, A2, Real(1) + log(Real(B)));
}

Real laurent_lower(unsigned long D, const Real& A1, const Real& A2, const Real& bprime) {
  const Real d = rl(D);
  const Real m = max(max(log(bprime) + Real::decimal("0.38"), Real(10) / d), Real(1));
  return -(Real::decimal("25.2") * d * d * d * d * m * m * A1 * A2);
}

Real y1_linear_form_lower(const Real& s, const Real& log_a, const Real& log_c) {
  const Real m = max(log(Real(2) * s + Real(1)) + Real::decimal("0.38"), Real(10));
  return -(Real::decimal("25.2") * m * m * log_a * log_c);
}

Real y1_s_threshold() { return (exp(Real::decimal("9.62")) - Real(1)) / Real(2); }

Real s_of_n(const BigInt& n) {
  if (n < 4) throw std::invalid_argument("s(n) requires n >= 4");
  BigInt n11;
  mpz_pow_ui(n11.get_mpz_t(), n.get_mpz_t(), 11);
  const BigInt n2 = n * n;
  const BigInt diff = n11 - 4 * n2;
  const Real log_n = log(Real(n));
  const Real log_q = log(Real(Rational(n11, 4)));
  const Real num = Real(2) * log(Real(diff)) + Real(5) * log_n + Real(2) * log_q;
  const Real den = Real(2) * log_q * log(Real(Rational(BigInt(diff * n2), 4))) - Real(2) * log2r() * log_n;
  return num / den * log_n;
}

Real t_of_n(const BigInt& n) {
  if (n < 4) throw std::invalid_argument("t(n) requires n >= 4");
  const Real L = log(Real(1) + Real(Rational(BigInt(2 * n * n), BigInt(6 * n + 9))));
  const Real log_n = log(Real(n));
  const Real head = sqrt(Real(Rational(1, 1534)) + (Real(1) + Real(Rational(BigInt(4), n))) * L);
  return head * L / (log_n * sqrt(log_n));
}

std::optional<Comparison> prime_part_threshold(const BigInt& n, const PrecisionSchedule& schedule) {
  if (n < 4) return std::nullopt;
  const BigInt p3 = p_part(n, 3);
  const BigInt p5 = p_part(n, 5);
  const BigInt best = p3 > p5 ? p3 : p5;
  const Real log_n = log(Real(n));
  const Real base = Real(1534) * log_n;
  const Real rhs = base * sqrt(base) * t_of_n(n) * sqrt(Real(n));
  return certified_compare(Real(best), rhs, schedule);
}

Y1Analysis y1_bounds(const Instance& inst, const PrecisionSchedule& schedule) {
  Y1Analysis out;
  const Assumptions as{Tag::YEqualsOne};
  const Real log_c = log(Real(inst.c));
  const Real lf = log_F(inst);
  const Real big = Real::decimal("7531.1");
  out.bounds.push_back(report("y1-x-upper", "x", Direction::Upper, true, big * log_c, as));
  out.bounds.push_back(report("y1-delta-upper", "Delta", Direction::Upper, true, big * lf, as));

  const bool r2 = inst.r == 2;
  if (r2) {
    out.bounds.push_back(report("y1-x-upper-r2", "x", Direction::Upper, true, Real(1534) * log_c, as));
    out.bounds.push_back(report("y1-delta-upper-r2", "Delta", Direction::Upper, true, Real(1534) * lf, as));
    out.bounds.push_back(report("y1-k-upper", "K", Direction::Upper, true, Real(56), as));
  }

  const bool scan_family = r2 && inst.n >= 4 && divides(2, inst.n) && mpz_fdiv_ui(inst.m.get_mpz_t(), 4) == 3;
  if (scan_family && (divides(3, inst.n) || divides(5, inst.n))) {
    std::optional<Real> lowest;
    for (unsigned long q : {3UL, 5UL}) {
      const Real nq(p_part(inst.n, BigInt(q)));
      const Real v = (nq * nq / (Real(1534 * 1534) * lf * lf) - Real(inst.n)) / Real(BigInt(inst.m + 1));
      lowest = lowest ? min(*lowest, v) : v;
    }
    out.bounds.push_back(report("y1-delta-lower", "Delta", Direction::Lower, true, *lowest, as,
                                "least over q in {3, 5}"));
  }

  // Any y = 1 solution has Delta >= 1, so Delta < C log F forces C log F > 1.
  if (r2) {
    Comparison k = certified_compare(Real(inst.m), Real(BigInt(56 * inst.n)), schedule);
    out.evidence.push_back(k);
    if (k.result == Ordering::Greater || k.result == Ordering::Equal) {
      out.eliminated = true;
      out.route = "k-at-least-56";
      out.reason = "K >= 56";
      return out;
    }
  }
  {
    const Real coeff = r2 ? Real(1534) : big;
    Comparison f = certified_compare(coeff * lf, Real(1), schedule);
    out.evidence.push_back(f);
    if (f.result == Ordering::Less || f.result == Ordering::Equal) {
      out.eliminated = true;
      out.route = "f-small";
      out.reason = r2 ? "F_2(K) <= e^(1/1534)" : "F_r(K) <= e^(1/7531.1)";
      return out;
    }
  }
  if (scan_family) {
    if (auto t = prime_part_threshold(inst.n, schedule)) {
      out.evidence.push_back(*t);
      if (t->result == Ordering::Greater || t->result == Ordering::Equal) {
        out.eliminated = true;
        out.route = "prime-part-threshold";
        out.reason = "max{n_(3), n_(5)} >= (1534 log n)^1.5 t(n) sqrt(n)";
        return out;
      }
    }
  }
  return out;
}

NuEta nu_eta(const Instance& inst, unsigned long alpha, const PrecisionSchedule& schedule) {
  const Real log_n = log(Real(inst.n));
  const Real nu = Real(1) + log2r() / log(Real(BigInt(inst.m * inst.n)));
  const Real gap = rl(2 * (alpha + 1)) * log2r() - nu * log_n;
  const Comparison cmp = certified_compare(gap, Real(0), schedule);
  if (cmp.result != Ordering::Greater) {
    throw EtaUndefined("eta undefined: n^nu < 4^(alpha+1) not certified (" + to_string(cmp.result) + ")");
  }
  const Real eta = (Real(22) * nu + Real(1)) * log2r() / (Real(11) * gap);
  return {nu, eta};
}

Comparison eta_hypothesis(const Instance& inst, const NuEta& ne, const PrecisionSchedule& schedule) {
  return certified_compare(log(Real(inst.c)), ne.eta * log(Real(inst.n)), schedule);
}

Real f_r_upper(const Rational& K, unsigned long r) {
  if (r % 4 != 2) throw std::invalid_argument("f_r_upper requires r = 2 (mod 4)");
  const Rational K2 = K * K;
  const Rational floor_sq = Rational(BigInt(32) * BigInt(r) * BigInt(r), 49);
  if (K2 <= floor_sq) throw std::invalid_argument("f_r_upper requires K^2 > (32/49) r^2");
  Rational v = K2 / Rational(K2 - floor_sq);
  v.canonicalize();
  return Real(v);
}

}  // namespace expcert
