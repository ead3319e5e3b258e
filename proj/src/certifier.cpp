#include "expcert/certifier.hpp"

#include <algorithm>

namespace expcert {

std::string to_string(Verdict v) {
  return v == Verdict::ConjectureHolds ? "ConjectureHolds" : "Undecided";
}

std::string to_string(Closure c) {
  switch (c) {
    case Closure::Open: return "open";
    case Closure::ParityContradiction: return "parity-contradiction";
    case Closure::BoundConflict: return "bound-conflict";
    case Closure::CfElimination: return "cf-elimination";
    case Closure::TrivialForced: return "trivial-forced";
    case Closure::ExternalCitation: return "external-citation";
    case Closure::TheoremShortcut: return "theorem-shortcut";
  }
  return "?";
}

bool TraceNode::closed() const {
  if (children.empty()) return closure != Closure::Open;
  return std::all_of(children.begin(), children.end(), [](const TraceNode& c) { return c.closed(); });
}

namespace {

unsigned long mod(const BigInt& v, unsigned long k) { return mpz_fdiv_ui(v.get_mpz_t(), k); }

bool is_power_of_two(const BigInt& v) { return v > 0 && mpz_popcount(v.get_mpz_t()) == 1; }

bool at_least(Ordering o) { return o == Ordering::Greater || o == Ordering::Equal; }

// ------------------------------------------------------------ hypothesis lists

class Checklist {
 public:
  explicit Checklist(std::string name) { result_.name = std::move(name); }

  bool exact(const std::string& statement, bool holds) {
    result_.hypotheses.push_back(Hypothesis{statement, holds, std::nullopt});
    return holds;
  }

  /// Records the comparison; `accept` decides which orderings satisfy it.
  bool compare(const std::string& statement, const Comparison& cmp, bool accept) {
    Hypothesis h{statement, std::nullopt, cmp};
    if (cmp.result != Ordering::Indeterminate) h.holds = accept;
    result_.hypotheses.push_back(std::move(h));
    return cmp.result != Ordering::Indeterminate && accept;
  }

  ShortcutResult finish(bool applicable, std::string note = {}) {
    result_.applicable = applicable;
    result_.note = std::move(note);
    return std::move(result_);
  }

 private:
  ShortcutResult result_;
};

Real large_m_exponent(const BigInt& n, const Real& inner) {
  const Real log_n = log(Real(n));
  return Real::decimal("10.4e11") * log_n * log(inner * log_n);
}

ShortcutResult large_m_impl(const std::string& name, const Real& log_m, const BigInt& n, unsigned long r,
                            std::optional<bool> m_3_mod_4, const EngineOptions& opt) {
  Checklist c(name);
  bool ok = c.exact("r = 2 (mod 4)", r % 4 == 2);
  if (m_3_mod_4) {
    ok = c.exact("m = 3 (mod 4)", *m_3_mod_4) && ok;
  } else {
    c.exact("m = 3 (mod 4) (assumed in symbolic mode)", true);
  }
  ok = c.exact("n even", mod(n, 2) == 0 && n >= 2) && ok;
  if (!ok) return c.finish(false);

  const Real t1 = large_m_exponent(n, Real::decimal("5.2e11"));
  const Real t2 = log(Real(3)) + Real(static_cast<long>(r));
  const Real t3 = log(Real::decimal("70.2") * Real(n) * Real(static_cast<long>(r)));
  auto cmp1 = certified_compare(log_m, t1, opt.schedule);
  ok = c.compare("log m > 10.4e11 log n log(5.2e11 log n)", cmp1, cmp1.result == Ordering::Greater) && ok;
  auto cmp2 = certified_compare(log_m, t2, opt.schedule);
  ok = c.compare("m > 3 e^r", cmp2, cmp2.result == Ordering::Greater) && ok;
  auto cmp3 = certified_compare(log_m, t3, opt.schedule);
  ok = c.compare("m > 70.2 n r", cmp3, cmp3.result == Ordering::Greater) && ok;
  return c.finish(ok);
}

const char* const kCitationTag = "covered-by-[Mi09]";

bool n_even_at_least_4(const Instance& inst) { return mod(inst.n, 2) == 0 && inst.n >= 4; }

}  // namespace

bool in_excluded_family(const TwoAdicProfile& p, bool require_alpha_three) {
  return p.balanced() && mod(p.j, 4) == 1 && (!require_alpha_three || p.alpha >= 3);
}

bool cited_congruence_family(const BigInt& m, const BigInt& n) {
  return (mod(m, 8) == 4 && mod(n, 16) == 7) || (mod(m, 16) == 7 && mod(n, 8) == 4);
}

std::optional<std::pair<BigInt, BigInt>> six_power_j_range(unsigned long t) {
  if (t == 0) return std::nullopt;
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), 6, t);
  BigInt M = 1;
  M <<= 2 * t - 1;
  // n < M j - 1  <=>  j > (n + 1) / M;  M j - 1 < 3n/2  <=>  j < (3n + 2) / (2M)
  BigInt lo = BigInt(n + 1) / M + 1;
  while (mod(lo, 4) != 1) ++lo;
  BigInt hi_num = 3 * n + 2;
  BigInt hi_den = 2 * M;
  BigInt hi = hi_num / hi_den;
  if (BigInt(hi * hi_den) == hi_num) --hi;
  while (hi >= lo && mod(hi, 4) != 1) --hi;
  if (hi < lo) return std::nullopt;
  return std::make_pair(lo, hi);
}

// ------------------------------------------------------------ whole-instance checks

ShortcutResult check_large_m(const Instance& inst, const EngineOptions& opt) {
  return large_m_impl("large-m", log(Real(inst.m)), inst.n, inst.r, mod(inst.m, 4) == 3, opt);
}

ShortcutResult check_large_m_symbolic(const std::string& log10_m, const BigInt& n, unsigned long r,
                                      const EngineOptions& opt) {
  const Real log_m = Real::decimal(log10_m) * log(Real(10));
  return large_m_impl("large-m", log_m, n, r, std::nullopt, opt);
}

std::vector<ShortcutResult> check_large_m_r2(const Instance& inst, const EngineOptions& opt) {
  std::vector<ShortcutResult> out;
  for (const char* inner : {"5.2e11", "1e11"}) {
    Checklist c(std::string("large-m-r2-") + inner);
    bool ok = c.exact("r = 2", inst.r == 2);
    ok = c.exact("m = 3 (mod 4)", mod(inst.m, 4) == 3) && ok;
    ok = c.exact("n even", mod(inst.n, 2) == 0) && ok;
    if (ok) {
      auto cmp = certified_compare(log(Real(inst.m)), large_m_exponent(inst.n, Real::decimal(inner)), opt.schedule);
      ok = c.compare(std::string("log m > 10.4e11 log n log(") + inner + " log n)", cmp,
                     cmp.result == Ordering::Greater);
    }
    ShortcutResult res = c.finish(ok);
    if (std::string(inner) == "1e11") {
      res.informational = true;
      res.note = "stated form; only the 5.2e11 form follows from the general threshold";
    }
    out.push_back(std::move(res));
  }
  return out;
}

ShortcutResult check_eta_route(const Instance& inst, const EngineOptions& opt) {
  Checklist c("eta-route");
  bool ok = c.exact("r = 2", inst.r == 2);
  ok = c.exact("m = 3 (mod 4)", mod(inst.m, 4) == 3) && ok;
  ok = c.exact("n even, n >= 4", n_even_at_least_4(inst)) && ok;
  ok = c.exact("m > 56n", inst.m > 56 * inst.n) && ok;
  if (!ok) return c.finish(false);

  if (c.exact("n = 2^alpha", is_power_of_two(inst.n))) return c.finish(true, "power-of-two n");

  const TwoAdicProfile p = two_adic_profile(inst.m, inst.n);
  if (!c.exact("not (2 alpha = beta + 1, j = 1 (mod 4), alpha >= 3)", !in_excluded_family(p, true))) {
    return c.finish(false);
  }
  try {
    const NuEta ne = nu_eta(inst, p.alpha, opt.schedule);
    c.exact("n^nu < 4^(alpha+1)", true);
    auto cmp = eta_hypothesis(inst, ne, opt.schedule);
    const bool holds = c.compare("m > sqrt(n^eta - n^2)", cmp, cmp.result == Ordering::Greater);
    return c.finish(holds, "nu/eta hypotheses taken conjunctively");
  } catch (const EtaUndefined& e) {
    c.exact("n^nu < 4^(alpha+1)", false);
    return c.finish(false, e.what());
  }
}

ShortcutResult check_prime_part_route(const Instance& inst, const EngineOptions& opt) {
  Checklist c("prime-part-route");
  bool ok = c.exact("r = 2", inst.r == 2);
  ok = c.exact("m = 3 (mod 4)", mod(inst.m, 4) == 3) && ok;
  ok = c.exact("n even, n >= 4", n_even_at_least_4(inst)) && ok;
  if (!ok) return c.finish(false);

  const bool big_k = c.exact("m > 56n", inst.m > 56 * inst.n);
  if (!big_k) {
    auto cmp = prime_part_threshold(inst.n, opt.schedule);
    if (!cmp || !c.compare("max{n_(3), n_(5)} >= (1534 log n)^1.5 t(n) sqrt(n)", *cmp, at_least(cmp->result))) {
      return c.finish(false);
    }
  }

  const TwoAdicProfile p = two_adic_profile(inst.m, inst.n);
  const BigInt n2 = p_part(inst.n, 2);
  const BigInt n3 = p_part(inst.n, 3);
  const BigInt n5 = p_part(inst.n, 5);
  const Real log_n = log(Real(inst.n));
  auto cond_i = [&] {
    auto cmp = certified_compare(log(Real(BigInt(2 * n2 * n3 * n5))),
                                 s_of_n(inst.n) * log(Real(2)) + log_n / Real(2), opt.schedule);
    return c.compare("2 n_(2) n_(3) n_(5) >= 2^s(n) sqrt(n)", cmp, at_least(cmp.result));
  };

  if (!in_excluded_family(p, true)) {
    c.exact("not (2 alpha = beta + 1, j = 1 (mod 4), alpha >= 3)", true);
    return c.finish(cond_i());
  }
  c.exact("2 alpha = beta + 1, j = 1 (mod 4)", true);
  bool holds = cond_i();
  const BigInt big = n3 > n5 ? n3 : n5;
  auto cmp_a = certified_compare(Real(big), Real(2) * sqrt(Real(inst.n) * log_n), opt.schedule);
  holds = c.compare("max{n_(3), n_(5)} >= 2 sqrt(n log n)", cmp_a, at_least(cmp_a.result)) && holds;
  BigInt lhs = n3 * n5;
  lhs <<= p.alpha + 1;
  auto cmp_b = certified_compare(Real(lhs), exp(log(Real(3)) / Real(12)) * Real(inst.n), opt.schedule);
  holds = c.compare("n_(3) n_(5) >= 3^(1/12) n / 2^(alpha+1)", cmp_b, at_least(cmp_b.result)) && holds;
  return c.finish(holds);
}

ShortcutResult check_small_n(const Instance& inst, const EngineOptions& opt) {
  Checklist c("small-n");
  bool ok = c.exact("r = 2", inst.r == 2);
  ok = c.exact("m = 3 (mod 4)", mod(inst.m, 4) == 3) && ok;
  ok = c.exact("n even, n >= 4", n_even_at_least_4(inst)) && ok;
  if (!ok) return c.finish(false);
  const TwoAdicProfile p = two_adic_profile(inst.m, inst.n);
  if (!c.exact("not (2 alpha = beta + 1, j = 1 (mod 4), alpha >= 3)", !in_excluded_family(p, true))) {
    return c.finish(false);
  }

  if (inst.n <= 64) {
    c.exact("n <= 64", true);
    if (inst.m < 56 * inst.n) {
      const EliminationResult e = eliminate_y1(inst, Real(1534), opt.schedule);
      const bool gone = c.exact("convergent scan eliminates y = 1 (" + to_string(e.verdict) + ")",
                                e.verdict == Elimination::Eliminated);
      return c.finish(gone);
    }
    return c.finish(true);
  }
  c.exact("n > 64", true);
  ok = c.exact("n_(2) > sqrt(n)", BigInt(p_part(inst.n, 2) * p_part(inst.n, 2)) > inst.n);
  ok = c.exact("m > 56n", inst.m > 56 * inst.n) && ok;
  return c.finish(ok);
}

ShortcutResult check_six_ten_powers(const Instance& inst, const EngineOptions&) {
  Checklist c("six-ten-powers");
  bool ok = c.exact("r = 2", inst.r == 2);
  ok = c.exact("m = 3 (mod 4)", mod(inst.m, 4) == 3) && ok;
  auto exponent_of = [&](unsigned long base) -> std::optional<unsigned long> {
    const unsigned long u = ord_p(inst.n, 2);
    BigInt pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), base, u);
    if (u == 0 || pw != inst.n) return std::nullopt;
    return u;
  };
  const auto u = exponent_of(6);
  const auto v = exponent_of(10);
  const bool fits = (u && *u >= 94) || (v && *v >= 40);
  ok = c.exact("n = 6^u with u >= 94 or n = 10^v with v >= 40", fits) && ok;
  return c.finish(ok);
}

ShortcutResult check_moderate_m_window(const Instance& inst, const EngineOptions&) {
  Checklist c("moderate-m-window");
  bool ok = c.exact("r = 2", inst.r == 2);
  ok = c.exact("m = 3 (mod 4)", mod(inst.m, 4) == 3) && ok;
  ok = c.exact("n even", mod(inst.n, 2) == 0) && ok;
  ok = c.exact("n < 64", inst.n < 64) && ok;
  BigInt top;
  mpz_pow_ui(top.get_mpz_t(), BigInt(2 * inst.n).get_mpz_t(), 10);
  ok = c.exact("56n < m < (2n)^10", inst.m > 56 * inst.n && inst.m < top) && ok;
  if (!ok) return c.finish(false);
  const TwoAdicProfile p = two_adic_profile(inst.m, inst.n);
  const bool listed = (p.alpha == 3 && p.beta == 5) || (p.alpha == 4 && p.beta == 7) || (p.alpha == 5 && p.beta == 9);
  ok = c.exact("not ((alpha, beta) in {(3,5), (4,7), (5,9)} and j = 1 (mod 4))", !(listed && mod(p.j, 4) == 1));
  return c.finish(ok);
}

ShortcutResult check_alpha_one(const Instance& inst, const EngineOptions& opt) {
  Checklist c("alpha-one");
  bool ok = c.exact("n = 2 (mod 4)", mod(inst.n, 4) == 2);
  ok = c.exact("m = 3 (mod 4)", mod(inst.m, 4) == 3) && ok;
  ok = c.exact("r = 2 (mod 4)", inst.r % 4 == 2) && ok;
  bool pos = false;
  try {
    pos = positivity_condition(inst, opt.schedule);
  } catch (const IndeterminateError&) {
    pos = false;
  }
  ok = c.exact("positivity condition", pos) && ok;
  if (!ok) return c.finish(false);
  auto cmp = certified_compare(Real::decimal("7531.1") * log(Real(f_ratio(inst))), Real(1), opt.schedule);
  ok = c.compare("F_r(K) < e^(1/7531.1)", cmp, cmp.result == Ordering::Less);
  return c.finish(ok, "y = 1 excluded by the F_r(K) bound; y > 1 forces the trivial solution");
}

std::vector<ShortcutResult> check_shortcuts(const Instance& inst, const EngineOptions& opt) {
  std::vector<ShortcutResult> out;
  out.push_back(check_large_m(inst, opt));
  for (auto& r : check_large_m_r2(inst, opt)) out.push_back(std::move(r));
  out.push_back(check_eta_route(inst, opt));
  out.push_back(check_prime_part_route(inst, opt));
  out.push_back(check_small_n(inst, opt));
  out.push_back(check_six_ten_powers(inst, opt));
  out.push_back(check_moderate_m_window(inst, opt));
  out.push_back(check_alpha_one(inst, opt));
  return out;
}

// ------------------------------------------------------------ case-split search

namespace {

struct Search {
  const Instance& inst;
  const EngineOptions& opt;
  ClosureResult closed;
  std::vector<Evidence>& evidence;

  std::vector<std::string> new_facts(const Assumptions& now, const Assumptions& parent) const {
    std::vector<std::string> out;
    for (const Fact& f : closed.facts) {
      if (f.assumptions.subset_of(now) && !(f.assumptions.subset_of(parent) && !(now == parent))) {
        out.push_back(f.str());
      }
    }
    return out;
  }

  bool has(const Claim& claim, const Assumptions& a) const { return implies(closed.facts, claim, a); }

  std::optional<std::string> parity_conflict(const Assumptions& a) const {
    if (auto c = contradiction_under(closed, a)) {
      std::string detail = "2 | " + to_string(c->subject) + " and 2 !| " + to_string(c->subject) + " via";
      for (const auto& p : c->provenance) detail += " " + p;
      return detail;
    }
    if (a.has(Tag::ZOdd) && has(Claim::even(Var::z), a)) return std::string("2 | z derived, 2 !| z assumed");
    if (a.has(Tag::ZEven) && has(Claim::odd(Var::z), a)) return std::string("2 !| z derived, 2 | z assumed");
    if (a.has(Tag::YEqualsOne) && has(Claim::even(Var::y), a)) return std::string("2 | y derived, y = 1 assumed");
    return std::nullopt;
  }

  BoundEval eval(const BoundReport& b) const {
    BoundEval e;
    e.bound_id = b.bound_id;
    e.subject = b.subject;
    e.direction = b.direction;
    e.strict = b.strict;
    e.note = b.note;
    try {
      e.interval = evaluate_to(b.value, 64, opt.schedule).str();
      e.integer = b.direction == Direction::Upper ? upper_integer(b.value, b.strict, opt.schedule)
                                                  : lower_integer(b.value, b.strict, opt.schedule);
    } catch (const std::exception& ex) {
      e.note += (e.note.empty() ? "" : "; ") + std::string("not evaluated: ") + ex.what();
    }
    return e;
  }

  // ---------------------------------------------------------- y = 1

  void close_y1(TraceNode& node) const {
    if (auto pc = parity_conflict(node.assumptions)) {
      node.closure = Closure::ParityContradiction;
      node.detail = *pc;
      return;
    }
    const Y1Analysis y1 = y1_bounds(inst, opt.schedule);
    for (const auto& b : y1.bounds) node.bounds.push_back(eval(b));
    for (const auto& cmp : y1.evidence) evidence.push_back(Evidence{"y=1: " + cmp.lhs_expr + " vs " + cmp.rhs_expr, cmp});
    if (y1.eliminated) {
      node.closure = Closure::BoundConflict;
      node.detail = y1.reason;
      Conflict c;
      const Comparison last = y1.evidence.empty() ? Comparison{} : y1.evidence.back();
      if (y1.route == "k-at-least-56") {
        c = {"K", "K = m/n", to_string(inst.K()), "y1-k-upper", "< 56"};
      } else if (y1.route == "f-small") {
        c = {"Delta", "Delta >= 1 for any y = 1 solution", "1", inst.r == 2 ? "y1-delta-upper-r2" : "y1-delta-upper",
             "< " + last.lhs_interval};
      } else {
        c = {"max{n_(3), n_(5)}", "exact prime parts of n", last.lhs_interval, "y = 1 prime-part bound",
             "< " + last.rhs_interval};
      }
      node.conflict = c;
      return;
    }

    const bool cf_setting = inst.r == 2 && n_even_at_least_4(inst) && mod(inst.m, 4) == 3;
    if (cf_setting) {
      const EliminationResult e = eliminate_y1(inst, Real(1534), opt.schedule);
      for (const auto& entry : e.scan.entries) {
        if (entry.comparison) {
          evidence.push_back(Evidence{"convergent scan s = " + std::to_string(entry.s), *entry.comparison});
        }
      }
      if (e.verdict == Elimination::Eliminated) {
        node.closure = Closure::CfElimination;
        node.detail = e.note + "; " + std::to_string(e.scan.entries.size()) + " convergents checked";
        return;
      }
      node.detail = "convergent scan: " + to_string(e.verdict) + " (" + e.note + ")";
    }
    if (inst.r == 2 && cited_congruence_family(inst.m, inst.n)) {
      node.closure = Closure::ExternalCitation;
      node.detail = kCitationTag;
      return;
    }
    if (node.detail.empty()) node.detail = "no elimination applies";
  }

  // ---------------------------------------------------------- y > 1

  struct YRange {
    std::vector<BoundEval> evals;
    std::optional<BigInt> raw_max;
    std::vector<std::string> skipped;
  };

  YRange y_range(bool z_even) const {
    YRange out;
    const std::vector<BoundReport> bs =
        z_even ? y_upper_even_z(inst) : y_upper_odd_z(inst, &out.skipped, opt.divisor_bound, opt.schedule);
    for (const auto& b : bs) {
      BoundEval e = eval(b);
      out.evals.push_back(e);
      if (b.subject != "Y" || !e.integer) continue;
      BigInt v = *e.integer;
      if (b.bound_id.find("refined") != std::string::npos && v < 1) v = 1;  // "Y = 1 or ..."
      if (!out.raw_max || v < *out.raw_max) out.raw_max = v;
    }
    return out;
  }

  void close_leaf(TraceNode& leaf, bool z_even, const YRange& yr) const {
    const Assumptions& a = leaf.assumptions;
    if (auto pc = parity_conflict(a)) {
      leaf.closure = Closure::ParityContradiction;
      leaf.detail = *pc;
      return;
    }
    const bool greater = a.has(Tag::RXGreaterZ);
    if (greater && inst.r == 2 && has(Claim::less(Var::x, Var::z), a)) {
      leaf.closure = Closure::BoundConflict;
      leaf.detail = "ordering gives x < z";
      leaf.conflict = Conflict{"x", "branch rX > z (r = 2)", "x > z", "ordering", "x < z"};
      return;
    }

    leaf.bounds = yr.evals;
    for (const auto& s : yr.skipped) leaf.detail += (leaf.detail.empty() ? "" : "; ") + s;

    // Y range
    std::optional<BigInt> y_max = yr.raw_max;
    if (y_max) {
      const bool odd = has(Claim::odd(Var::Y), a);
      const bool not3 = has(Claim::not_divisible(Var::Y, 3), a);
      BigInt v = *y_max;
      while (v >= 1 && ((odd && mod(v, 2) == 0) || (not3 && mod(v, 3) == 0))) --v;
      y_max = v;
      long y_min = 1;
      std::string min_src = "Y >= 1";
      for (const Fact& f : closed.facts) {
        if (f.claim.kind == Claim::Kind::AtLeast && f.claim.v1 == Var::Y && f.assumptions.subset_of(a) &&
            f.claim.k > y_min) {
          y_min = f.claim.k;
          min_src = f.str();
        }
      }
      if (BigInt(y_min) > *y_max) {
        leaf.closure = Closure::BoundConflict;
        leaf.detail = "Y range empty";
        std::string upper = "Y <= " + to_string(*y_max);
        if (*y_max != *yr.raw_max) {
          upper += " (from " + to_string(*yr.raw_max) + " with " + std::string(odd ? "Y odd" : "") +
                   (odd && not3 ? ", " : "") + (not3 ? "3 !| Y" : "") + ")";
        }
        leaf.conflict = Conflict{"Y", min_src, "Y >= " + std::to_string(y_min), "y-upper bounds", upper};
        return;
      }
    }

    // Delta range
    std::vector<std::string> skipped;
    const auto ds = delta_bounds(inst, z_even, greater ? OrderBranch::RXGreaterZ : OrderBranch::RXLessZ, y_max,
                                 &skipped, opt.schedule);
    BigInt d_min = 1;
    std::string d_min_src = "Delta > 0";
    std::optional<BigInt> d_max;
    std::string d_max_src;
    for (const auto& b : ds) {
      BoundEval e = eval(b);
      leaf.bounds.push_back(e);
      if (b.subject != "Delta" || !e.integer) continue;
      if (b.direction == Direction::Lower && *e.integer > d_min) {
        d_min = *e.integer;
        d_min_src = b.bound_id;
      }
      if (b.direction == Direction::Upper && (!d_max || *e.integer < *d_max)) {
        d_max = *e.integer;
        d_max_src = b.bound_id;
      }
    }
    for (const auto& s : skipped) leaf.detail += (leaf.detail.empty() ? "" : "; ") + s;
    if (d_max && d_min > *d_max) {
      leaf.closure = Closure::BoundConflict;
      leaf.detail = "Delta range empty";
      leaf.conflict = Conflict{"Delta", d_min_src, "Delta >= " + to_string(d_min), d_max_src,
                               "Delta <= " + to_string(*d_max)};
      return;
    }
    if (leaf.detail.empty()) leaf.detail = "no conflict found";
  }

  void close_y_gt_1(TraceNode& node) const {
    const Assumptions& a = node.assumptions;
    if (auto pc = parity_conflict(a)) {
      node.closure = Closure::ParityContradiction;
      node.detail = *pc;
      return;
    }
    bool pos = false;
    try {
      pos = positivity_condition(inst, opt.schedule);
    } catch (const IndeterminateError&) {
    }
    if (pos && mod(inst.n, 4) == 2 && mod(inst.m, 4) == 3 && inst.r % 4 == 2) {
      node.closure = Closure::TrivialForced;
      node.detail = "alpha = 1 with m = 3 (mod 4): 2 | x, 2 | z, 2 | y and Y = 1 force (x, y, z) = (2, 2, r)";
      return;
    }
    if (inst.r == 2 && cited_congruence_family(inst.m, inst.n)) {
      node.closure = Closure::ExternalCitation;
      node.detail = kCitationTag;
      return;
    }

    for (bool z_even : {true, false}) {
      TraceNode zn;
      zn.label = z_even ? "2|z" : "2!|z";
      zn.assumptions = a.with(z_even ? Tag::ZEven : Tag::ZOdd);
      zn.facts = new_facts(zn.assumptions, a);
      if (auto pc = parity_conflict(zn.assumptions)) {
        zn.closure = Closure::ParityContradiction;
        zn.detail = *pc;
        node.children.push_back(std::move(zn));
        continue;
      }
      if (!has(Claim::even(Var::x), zn.assumptions) || !has(Claim::even(Var::y), zn.assumptions)) {
        zn.detail = "2 | x and 2 | y not both established";
        node.children.push_back(std::move(zn));
        continue;
      }

      TraceNode d0;
      d0.label = "Delta=0";
      d0.assumptions = zn.assumptions;
      d0.closure = Closure::TrivialForced;
      d0.detail = "Delta = 0 forces (X, Y, z) = (1, 1, r)";
      zn.children.push_back(std::move(d0));

      TraceNode dp;
      dp.label = "Delta>0";
      dp.assumptions = zn.assumptions.with(Tag::DeltaPositive);
      dp.facts = new_facts(dp.assumptions, zn.assumptions);
      if (auto pc = parity_conflict(dp.assumptions)) {
        dp.closure = Closure::ParityContradiction;
        dp.detail = *pc;
      } else {
        const YRange yr = y_range(z_even);
        for (Tag order : {Tag::RXLessZ, Tag::RXGreaterZ}) {
          TraceNode leaf;
          leaf.label = to_string(order);
          leaf.assumptions = dp.assumptions.with(order);
          leaf.facts = new_facts(leaf.assumptions, dp.assumptions);
          close_leaf(leaf, z_even, yr);
          dp.children.push_back(std::move(leaf));
        }
      }
      zn.children.push_back(std::move(dp));
      node.children.push_back(std::move(zn));
    }
  }
};

void collect_open(const TraceNode& node, const std::string& path, std::vector<std::string>& out) {
  const std::string here = path.empty() ? node.label : path + "/" + node.label;
  if (node.children.empty()) {
    if (node.closure == Closure::Open) out.push_back(here);
    return;
  }
  for (const auto& c : node.children) collect_open(c, here, out);
}

void close_open(TraceNode& node, const std::string& name) {
  if (node.children.empty()) {
    if (node.closure == Closure::Open) {
      node.closure = Closure::TheoremShortcut;
      node.detail += (node.detail.empty() ? "" : "; ") + std::string("closed by ") + name;
    }
    return;
  }
  for (auto& c : node.children) close_open(c, name);
}

void shortcut_evidence(const std::vector<ShortcutResult>& shortcuts, std::vector<Evidence>& evidence) {
  for (const auto& s : shortcuts) {
    for (const auto& h : s.hypotheses) {
      if (h.comparison) evidence.push_back(Evidence{s.name + ": " + h.statement, *h.comparison});
    }
  }
}

}  // namespace

Certificate certify(const Instance& inst, const EngineOptions& opt) {
  Certificate cert;
  cert.inst = inst;

  const RuleContext ctx = make_rule_context(inst, opt.divisor_bound, opt.schedule);
  RuleReport report = apply_rules(inst, ctx);
  ClosureResult closed = closure(report.facts());
  apply_fact_rules(inst, ctx, closed.facts, report);
  closed = closure(report.facts());
  cert.rules = report.deductions;
  cert.not_attempted = report.not_attempted;

  Search search{inst, opt, std::move(closed), cert.evidence};

  cert.trace.label = "root";
  cert.trace.facts = search.new_facts(Assumptions{}, Assumptions{});

  TraceNode y1;
  y1.label = "y=1";
  y1.assumptions = Assumptions{Tag::YEqualsOne};
  y1.facts = search.new_facts(y1.assumptions, Assumptions{});
  search.close_y1(y1);
  cert.trace.children.push_back(std::move(y1));

  TraceNode yg;
  yg.label = "y>1";
  yg.assumptions = Assumptions{Tag::YGreaterOne};
  yg.facts = search.new_facts(yg.assumptions, Assumptions{});
  search.close_y_gt_1(yg);
  cert.trace.children.push_back(std::move(yg));

  if (opt.use_shortcuts) {
    cert.shortcuts = check_shortcuts(inst, opt);
    shortcut_evidence(cert.shortcuts, cert.evidence);
    if (!cert.trace.closed()) {
      for (const auto& s : cert.shortcuts) {
        if (s.applicable && !s.informational) {
          close_open(cert.trace, s.name);
          break;
        }
      }
    }
  }

  collect_open(cert.trace, "", cert.open_branches);
  cert.verdict = cert.trace.closed() ? Verdict::ConjectureHolds : Verdict::Undecided;
  return cert;
}

Certificate certify_symbolic(const std::string& log10_m, const BigInt& n, unsigned long r, const EngineOptions& opt) {
  Certificate cert;
  cert.symbolic = true;
  cert.log10_m = log10_m;
  cert.inst.n = n;
  cert.inst.r = r;
  ShortcutResult s = check_large_m_symbolic(log10_m, n, r, opt);
  cert.trace.label = "root";
  if (s.applicable) {
    cert.trace.closure = Closure::TheoremShortcut;
    cert.trace.detail = "closed by large-m (hypothesis evaluation only)";
  } else {
    cert.trace.detail = "large-m hypotheses not met";
  }
  cert.shortcuts.push_back(std::move(s));
  shortcut_evidence(cert.shortcuts, cert.evidence);
  collect_open(cert.trace, "", cert.open_branches);
  cert.verdict = cert.trace.closed() ? Verdict::ConjectureHolds : Verdict::Undecided;
  return cert;
}

}  // namespace expcert
