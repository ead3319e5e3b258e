#include "expcert/parity.hpp"

#include <algorithm>
#include <sstream>

namespace expcert {

std::string to_string(Var v) {
  switch (v) {
    case Var::x: return "x";
    case Var::y: return "y";
    case Var::z: return "z";
    case Var::X: return "X";
    case Var::Y: return "Y";
    case Var::Z: return "Z";
    case Var::Delta: return "Delta";
  }
  return "?";
}

std::string to_string(Tag t) {
  switch (t) {
    case Tag::YGreaterOne: return "y>1";
    case Tag::YEqualsOne: return "y=1";
    case Tag::DeltaPositive: return "Delta>0";
    case Tag::ZEven: return "2|z";
    case Tag::ZOdd: return "2!|z";
    case Tag::RXLessZ: return "rX<z";
    case Tag::RXGreaterZ: return "rX>z";
  }
  return "?";
}

// ---------------------------------------------------------------- Assumptions

Assumptions::Assumptions(std::initializer_list<Tag> tags) {
  for (Tag t : tags) bits_.set(static_cast<std::size_t>(t));
}

Assumptions Assumptions::with(Tag t) const {
  Assumptions out = *this;
  out.bits_.set(static_cast<std::size_t>(t));
  return out;
}

bool Assumptions::consistent() const {
  return !(has(Tag::YGreaterOne) && has(Tag::YEqualsOne)) && !(has(Tag::ZEven) && has(Tag::ZOdd)) &&
         !(has(Tag::RXLessZ) && has(Tag::RXGreaterZ));
}

std::vector<std::string> Assumptions::labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < kTagCount; ++i) {
    if (bits_.test(i)) out.push_back(to_string(static_cast<Tag>(i)));
  }
  return out;
}

Assumptions operator|(const Assumptions& a, const Assumptions& b) {
  Assumptions out;
  out.bits_ = a.bits_ | b.bits_;
  return out;
}

// ---------------------------------------------------------------- Claim / Fact

bool operator==(const Claim& a, const Claim& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Claim::Kind::Even:
    case Claim::Kind::Odd:
      return a.v1 == b.v1;
    case Claim::Kind::Congruent:
      return (a.v1 == b.v1 && a.v2 == b.v2) || (a.v1 == b.v2 && a.v2 == b.v1);
    case Claim::Kind::Less:
      return a.v1 == b.v1 && a.v2 == b.v2;
    case Claim::Kind::AtLeast:
    case Claim::Kind::NotDivisible:
      return a.v1 == b.v1 && a.k == b.k;
    case Claim::Kind::AtMostAffine:
      return a.v1 == b.v1 && a.v2 == b.v2 && a.k == b.k && a.k2 == b.k2;
  }
  return false;
}

std::string Claim::str() const {
  const std::string a = to_string(v1);
  const std::string b = to_string(v2);
  switch (kind) {
    case Kind::Even: return "2 | " + a;
    case Kind::Odd: return "2 !| " + a;
    case Kind::Congruent: return a + " = " + b + " (mod 2)";
    case Kind::Less: return a + " < " + b;
    case Kind::AtLeast: return a + " >= " + std::to_string(k);
    case Kind::NotDivisible: return std::to_string(k) + " !| " + a;
    case Kind::AtMostAffine: {
      std::ostringstream os;
      os << b << " <= " << k << a << (k2 < 0 ? " - " : " + ") << (k2 < 0 ? -k2 : k2);
      return os.str();
    }
  }
  return "?";
}

std::string Fact::str() const {
  std::string out = claim.str();
  if (!assumptions.empty()) {
    out += " [";
    const auto labels = assumptions.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? ", " : "") + labels[i];
    out += "]";
  }
  return out;
}

std::vector<Fact> RuleReport::facts() const {
  std::vector<Fact> out;
  out.reserve(deductions.size());
  for (const auto& d : deductions) out.push_back(d.conclusion);
  return out;
}

// ---------------------------------------------------------------- rules

namespace {

bool is_power_of_two(const BigInt& v) { return v > 0 && mpz_popcount(v.get_mpz_t()) == 1; }

unsigned long mod(const BigInt& v, unsigned long k) { return mpz_fdiv_ui(v.get_mpz_t(), k); }

bool subsumed(const std::vector<Fact>& facts, const Fact& f) {
  return std::any_of(facts.begin(), facts.end(), [&](const Fact& g) {
    return g.claim == f.claim && g.assumptions.subset_of(f.assumptions);
  });
}

class Emitter {
 public:
  explicit Emitter(RuleReport& report) : report_(report) {}

  void emit(const std::string& rule, std::vector<std::string> premises, const Claim& claim,
            Assumptions assumptions = {}) {
    Fact f{claim, assumptions, {rule}};
    const auto existing = report_.facts();
    if (subsumed(existing, f)) return;
    report_.deductions.push_back(Deduction{rule, std::move(premises), std::move(f)});
  }

  void skip(const std::string& rule, const std::string& reason) {
    report_.not_attempted.push_back(NotAttempted{rule, reason});
  }

 private:
  RuleReport& report_;
};

void divisor_rules(const Instance& inst, const RuleContext& ctx, Emitter& out) {
  const Assumptions y_gt_1{Tag::YGreaterOne};
  const BigInt sum = inst.m + inst.n;
  const BigInt diff = inst.m - inst.n;

  const Factorization fs = trial_factor(sum, ctx.divisor_bound);
  if (!fs.complete()) {
    out.skip("divisor-sum", "m + n = " + to_string(sum) + " has unfactored cofactor " +
                                to_string(fs.cofactor) + " beyond bound " +
                                std::to_string(ctx.divisor_bound) + "; cofactor used as an atom");
  }
  bool seen7 = false;
  bool seen3 = false;
  bool seen5 = false;
  for (const BigInt& d : divisors(fs)) {
    const unsigned long res = mod(d, 8);
    const std::string premise = "d = " + to_string(d) + " | m + n = " + to_string(sum) +
                                ", d = " + std::to_string(res) + " (mod 8)";
    if (res == 7 && !seen7) {
      seen7 = true;
      out.emit("divisor-sum-7-mod-8", {"r = 2", premise}, Claim::even(Var::y), y_gt_1);
    } else if (res == 3 && !seen3) {
      seen3 = true;
      out.emit("divisor-sum-3-mod-8", {"r = 2", premise}, Claim::even(Var::z), y_gt_1);
    } else if (res == 5 && !seen5) {
      seen5 = true;
      out.emit("divisor-sum-5-mod-8", {"r = 2", premise}, Claim::congruent(Var::y, Var::z), y_gt_1);
    }
  }

  const Factorization fd = trial_factor(diff, ctx.divisor_bound);
  if (!fd.complete()) {
    out.skip("divisor-diff", "m - n = " + to_string(diff) + " has unfactored cofactor " +
                                 to_string(fd.cofactor) + " beyond bound " +
                                 std::to_string(ctx.divisor_bound) + "; cofactor used as an atom");
  }
  for (const BigInt& d : divisors(fd)) {
    const unsigned long res = mod(d, 8);
    if (res == 3 || res == 5) {
      out.emit("divisor-diff-3-5-mod-8",
               {"r = 2", "d = " + to_string(d) + " | m - n = " + to_string(diff) + ", d = " +
                             std::to_string(res) + " (mod 8)"},
               Claim::congruent(Var::y, Var::z), y_gt_1);
      break;
    }
  }
}

}  // namespace

RuleContext make_rule_context(const Instance& inst, std::uint64_t divisor_bound,
                              const PrecisionSchedule& schedule) {
  RuleContext ctx;
  ctx.profile = try_two_adic_profile(inst.m, inst.n);
  try {
    ctx.positivity = positivity_condition(inst, schedule);
  } catch (const IndeterminateError&) {
    ctx.positivity = false;
  }
  ctx.k_above_three_halves = inst.K() > Rational(3, 2);
  ctx.divisor_bound = divisor_bound;
  return ctx;
}

RuleReport apply_rules(const Instance& inst, const RuleContext& ctx) {
  RuleReport report;
  Emitter out(report);
  const BigInt& m = inst.m;
  const BigInt& n = inst.n;
  const Assumptions y_gt_1{Tag::YGreaterOne};
  const std::string pos = "positivity condition holds";

  if (ctx.positivity) {
    const BigInt g1 = gcd(m, n * n - 1);
    if (g1 > 1) {
      out.emit("gcd-m-n2-minus-1", {pos, "gcd(m, n^2 - 1) = " + to_string(g1) + " > 1"},
               Claim::even(Var::x));
    }
    const BigInt g2 = gcd(m, n * n + 1);
    if (g2 != 1 && !is_power_of_two(g2)) {
      out.emit("gcd-m-n2-plus-1", {pos, "gcd(m, n^2 + 1) = " + to_string(g2) + " not 1 or 2^t"},
               Claim::even(Var::z));
    }
    const BigInt g3 = gcd(m * m + 1, n);
    if (g3 != 1 && !is_power_of_two(g3)) {
      out.emit("gcd-m2-plus-1-n", {pos, "gcd(m^2 + 1, n) = " + to_string(g3) + " not 1 or 2^t"},
               Claim::congruent(Var::x, Var::z));
    }
    if (mod(m, 4) == 3) {
      out.emit("jacobi-m-3-mod-4", {pos, "m = 3 (mod 4)", "jacobi(-1, m) = " + std::to_string(jacobi(-1, m))},
               Claim::even(Var::x));
    }

    const unsigned long s8 = mod(m + n, 8);
    const unsigned long d8 = mod(m - n, 8);
    const std::string sum_res = "m + n = " + std::to_string(s8) + " (mod 8)";
    const std::string diff_res = "m - n = " + std::to_string(d8) + " (mod 8)";
    if (inst.r % 8 == 2) {
      const std::string rr = "r = 2 (mod 8)";
      if (s8 == 7) out.emit("mod8-sum-7", {pos, rr, sum_res}, Claim::even(Var::y), y_gt_1);
      if (s8 == 3) out.emit("mod8-sum-3", {pos, rr, sum_res}, Claim::even(Var::z), y_gt_1);
      if (s8 == 5 || d8 == 3 || d8 == 5) {
        out.emit("mod8-sum-5-or-diff-3-5", {pos, rr, sum_res, diff_res},
                 Claim::congruent(Var::y, Var::z), y_gt_1);
      }
    } else if (inst.r % 8 == 6) {
      const std::string rr = "r = 6 (mod 8)";
      if (d8 == 7) out.emit("mod8-diff-7", {pos, rr, diff_res}, Claim::even(Var::y), y_gt_1);
      if (d8 == 3) out.emit("mod8-diff-3", {pos, rr, diff_res}, Claim::even(Var::z), y_gt_1);
      if (d8 == 5 || s8 == 3 || s8 == 5) {
        out.emit("mod8-diff-5-or-sum-3-5", {pos, rr, diff_res, sum_res},
                 Claim::congruent(Var::y, Var::z), y_gt_1);
      }
    }

    if (mod(n, 4) == 0 && mod(m, 4) == 3) {
      out.emit("n-0-mod-4-m-3-mod-4", {pos, "n = 0 (mod 4)", "m = 3 (mod 4)"}, Claim::even(Var::y),
               y_gt_1);
    }
  } else {
    out.skip("positivity-gated", "positivity condition fails; congruence rules needing it skipped");
  }

  if (ctx.profile) {
    const TwoAdicProfile& p = *ctx.profile;
    const std::string prof = "alpha = " + std::to_string(p.alpha) + ", beta = " + std::to_string(p.beta);
    if (!p.balanced() && inst.r % 4 == 2) {
      out.emit("profile-unbalanced", {prof, "2 alpha != beta + 1", "r = 2 (mod 4)"},
               Claim::congruent(Var::x, Var::z), y_gt_1);
    }
    const long e_mod4 = p.e == 1 ? 1 : 3;
    if (ctx.positivity && p.balanced() && static_cast<long>(mod(p.j, 4)) == e_mod4) {
      out.emit("profile-balanced",
               {pos, prof, "2 alpha = beta + 1", "j = " + to_string(p.j) + " = e (mod 4)"},
               Claim::even(Var::z), y_gt_1);
    }
  } else {
    out.skip("profile", "no 2-adic profile for (m, n)");
  }

  if (inst.r == 2) divisor_rules(inst, ctx, out);

  return report;
}

void apply_fact_rules(const Instance& inst, const RuleContext& ctx, const std::vector<Fact>& facts,
                      RuleReport& report) {
  Emitter out(report);
  std::vector<const Fact*> ex;
  std::vector<const Fact*> ey;
  std::vector<const Fact*> ez;
  for (const Fact& f : facts) {
    if (f.claim.kind != Claim::Kind::Even) continue;
    if (f.claim.v1 == Var::x) ex.push_back(&f);
    if (f.claim.v1 == Var::y) ey.push_back(&f);
    if (f.claim.v1 == Var::z) ez.push_back(&f);
  }
  const bool ordering_gate = inst.r == 2 && inst.n >= 4 && ctx.k_above_three_halves;

  for (const Fact* fx : ex) {
    for (const Fact* fy : ey) {
      const Assumptions base = fx->assumptions | fy->assumptions;
      if (!base.consistent()) continue;
      const std::vector<std::string> premises{fx->str(), fy->str()};

      out.emit("half-exponents-odd", premises, Claim::odd(Var::X), base);
      out.emit("half-exponents-odd", premises, Claim::odd(Var::Y), base);

      if (inst.r % 4 == 2) {
        std::vector<Assumptions> z_sources{base.with(Tag::ZEven)};
        std::vector<std::string> z_premise{"2 | z (assumed)"};
        for (const Fact* fz : ez) {
          const Assumptions a = base | fz->assumptions;
          if (!a.consistent()) continue;
          z_sources.push_back(a);
          z_premise.push_back(fz->str());
        }
        for (std::size_t i = 0; i < z_sources.size(); ++i) {
          std::vector<std::string> p = premises;
          p.push_back("r = 2 (mod 4)");
          p.push_back(z_premise[i]);
          for (Var v : {Var::X, Var::Y, Var::Z}) {
            out.emit("half-exponents-all-odd", p, Claim::odd(v), z_sources[i]);
          }
        }
      }

      if (ordering_gate) {
        std::vector<std::string> p = premises;
        p.push_back("r = 2");
        p.push_back("n = " + to_string(inst.n) + " >= 4");
        p.push_back("K = m/n > 3/2");
        const Assumptions d = base.with(Tag::DeltaPositive);
        out.emit("ordering", p, Claim::less(Var::x, Var::z), d);
        out.emit("ordering", p, Claim::less(Var::z, Var::y), d);

        out.emit("half-exponent-floor", p, Claim::not_divisible(Var::X, 3), d);
        out.emit("half-exponent-floor", p, Claim::not_divisible(Var::Y, 3), d);
        out.emit("half-exponent-floor", p, Claim::not_divisible(Var::z, 9), d);
        out.emit("half-exponent-floor", p, Claim::not_divisible(Var::z, 15), d);

        const Assumptions de = d.with(Tag::ZEven);
        out.emit("half-exponent-floor", p, Claim::at_least(Var::X, 5), de);
        out.emit("half-exponent-floor", p, Claim::at_least(Var::Y, 11), de);
        out.emit("half-exponent-floor", p, Claim::not_divisible(Var::Z, 3), de);
        out.emit("half-exponent-floor", p, Claim::not_divisible(Var::Z, 5), de);

        const Assumptions dz = d.with(Tag::ZOdd);
        out.emit("half-exponent-floor", p, Claim::at_least(Var::Y, 5), dz);
        out.emit("half-exponent-floor", p, Claim::at_most_affine(Var::z, 2, Var::Y, -3), dz);
        out.emit("half-exponent-floor", p, Claim::less(Var::Y, Var::z), dz);
      }
    }
  }
}

// ---------------------------------------------------------------- closure

namespace {

bool parity_kind(const Claim& c) {
  return c.kind == Claim::Kind::Even || c.kind == Claim::Kind::Odd;
}

std::vector<std::string> merge_provenance(const Fact& a, const Fact& b) {
  std::vector<std::string> out = a.provenance;
  for (const auto& p : b.provenance) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

}  // namespace

ClosureResult closure(const std::vector<Fact>& input) {
  ClosureResult out;
  for (const Fact& f : input) {
    if (!subsumed(out.facts, f)) out.facts.push_back(f);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t count = out.facts.size();
    for (std::size_t i = 0; i < count; ++i) {
      const Fact cong = out.facts[i];
      if (cong.claim.kind != Claim::Kind::Congruent) continue;
      for (std::size_t j = 0; j < count; ++j) {
        const Fact other = out.facts[j];
        const Assumptions a = cong.assumptions | other.assumptions;
        if (!a.consistent()) continue;
        Fact derived;
        if (parity_kind(other.claim) &&
            (other.claim.v1 == cong.claim.v1 || other.claim.v1 == cong.claim.v2)) {
          const Var target = other.claim.v1 == cong.claim.v1 ? cong.claim.v2 : cong.claim.v1;
          derived.claim = other.claim.kind == Claim::Kind::Even ? Claim::even(target) : Claim::odd(target);
        } else if (other.claim.kind == Claim::Kind::Congruent && j != i) {
          // transitivity through a shared variable
          Var ends[2];
          if (cong.claim.v2 == other.claim.v1) {
            ends[0] = cong.claim.v1;
            ends[1] = other.claim.v2;
          } else if (cong.claim.v2 == other.claim.v2) {
            ends[0] = cong.claim.v1;
            ends[1] = other.claim.v1;
          } else if (cong.claim.v1 == other.claim.v1) {
            ends[0] = cong.claim.v2;
            ends[1] = other.claim.v2;
          } else if (cong.claim.v1 == other.claim.v2) {
            ends[0] = cong.claim.v2;
            ends[1] = other.claim.v1;
          } else {
            continue;
          }
          if (ends[0] == ends[1]) continue;
          derived.claim = Claim::congruent(ends[0], ends[1]);
        } else {
          continue;
        }
        derived.assumptions = a;
        derived.provenance = merge_provenance(other, cong);
        if (!subsumed(out.facts, derived)) {
          out.facts.push_back(std::move(derived));
          changed = true;
        }
      }
    }
  }

  for (const Fact& ev : out.facts) {
    if (ev.claim.kind != Claim::Kind::Even) continue;
    for (const Fact& od : out.facts) {
      if (od.claim.kind != Claim::Kind::Odd || od.claim.v1 != ev.claim.v1) continue;
      const Assumptions a = ev.assumptions | od.assumptions;
      if (!a.consistent()) continue;
      const bool dup = std::any_of(out.contradictions.begin(), out.contradictions.end(),
                                   [&](const Contradiction& c) { return c.assumptions.subset_of(a); });
      if (dup) continue;
      out.contradictions.push_back(Contradiction{ev.claim.v1, a, merge_provenance(ev, od)});
    }
  }
  return out;
}

std::vector<Fact> facts_under(const std::vector<Fact>& facts, const Assumptions& assumptions) {
  std::vector<Fact> out;
  for (const Fact& f : facts) {
    if (f.assumptions.subset_of(assumptions)) out.push_back(f);
  }
  return out;
}

bool implies(const std::vector<Fact>& facts, const Claim& claim, const Assumptions& assumptions) {
  return std::any_of(facts.begin(), facts.end(), [&](const Fact& f) {
    return f.claim == claim && f.assumptions.subset_of(assumptions);
  });
}

std::optional<Contradiction> contradiction_under(const ClosureResult& closed,
                                                 const Assumptions& assumptions) {
  for (const Contradiction& c : closed.contradictions) {
    if (c.assumptions.subset_of(assumptions)) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- solutions

namespace {

struct Values {
  BigInt x, y, z;
  unsigned long r;

  std::optional<BigInt> get(Var v) const {
    switch (v) {
      case Var::x: return x;
      case Var::y: return y;
      case Var::z: return z;
      case Var::X: return half(x);
      case Var::Y: return half(y);
      case Var::Z: return half(z);
      case Var::Delta: return abs(BigInt(r / 2) * x - z);
    }
    return std::nullopt;
  }

  static std::optional<BigInt> half(const BigInt& v) {
    if (mpz_odd_p(v.get_mpz_t())) return std::nullopt;
    return BigInt(v / 2);
  }
};

}  // namespace

bool solution_meets(const Assumptions& a, unsigned long r, const BigInt& x, const BigInt& y,
                    const BigInt& z) {
  const BigInt rx = BigInt(r / 2) * x;
  if (a.has(Tag::YGreaterOne) && !(y > 1)) return false;
  if (a.has(Tag::YEqualsOne) && y != 1) return false;
  if (a.has(Tag::DeltaPositive) && rx == z) return false;
  if (a.has(Tag::ZEven) && mpz_odd_p(z.get_mpz_t())) return false;
  if (a.has(Tag::ZOdd) && mpz_even_p(z.get_mpz_t())) return false;
  if (a.has(Tag::RXLessZ) && !(rx < z)) return false;
  if (a.has(Tag::RXGreaterZ) && !(rx > z)) return false;
  return true;
}

std::optional<bool> claim_holds(const Claim& c, unsigned long r, const BigInt& x, const BigInt& y,
                                const BigInt& z) {
  const Values vals{x, y, z, r};
  const auto a = vals.get(c.v1);
  const auto b = vals.get(c.v2);
  if (!a || !b) return std::nullopt;
  switch (c.kind) {
    case Claim::Kind::Even: return mpz_even_p(a->get_mpz_t()) != 0;
    case Claim::Kind::Odd: return mpz_odd_p(a->get_mpz_t()) != 0;
    case Claim::Kind::Congruent: return mpz_even_p(BigInt(*a - *b).get_mpz_t()) != 0;
    case Claim::Kind::Less: return *a < *b;
    case Claim::Kind::AtLeast: return *a >= c.k;
    case Claim::Kind::NotDivisible: return mpz_fdiv_ui(a->get_mpz_t(), static_cast<unsigned long>(c.k)) != 0;
    case Claim::Kind::AtMostAffine: return *b <= BigInt(c.k) * *a + c.k2;
  }
  return std::nullopt;
}

}  // namespace expcert
