#include <doctest.h>

#include <algorithm>

#include "expcert/parity.hpp"
#include "expcert/search.hpp"

using namespace expcert;

namespace {

std::vector<Fact> derive(const Instance& inst) {
  const RuleContext ctx = make_rule_context(inst);
  RuleReport report = apply_rules(inst, ctx);
  ClosureResult closed = closure(report.facts());
  apply_fact_rules(inst, ctx, closed.facts, report);
  return closure(report.facts()).facts;
}

bool fired(const RuleReport& r, const std::string& id, const Claim& claim) {
  return std::any_of(r.deductions.begin(), r.deductions.end(),
                     [&](const Deduction& d) { return d.rule_id == id && d.conclusion.claim == claim; });
}

bool premise_mentions(const RuleReport& r, const std::string& id, const std::string& text) {
  for (const auto& d : r.deductions) {
    if (d.rule_id != id) continue;
    for (const auto& p : d.premises) {
      if (p.find(text) != std::string::npos) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("m = 3 (mod 4) gives 2 | x") {
  const Instance inst = build_instance(7, 2, 2);
  const RuleReport r = apply_rules(inst, make_rule_context(inst));
  CHECK(fired(r, "jacobi-m-3-mod-4", Claim::even(Var::x)));
  // an earlier rule already yields 2 | x here, so the duplicate is not recorded
  const Instance dup = build_instance(3, 2, 2);
  const RuleReport rd = apply_rules(dup, make_rule_context(dup));
  CHECK(fired(rd, "gcd-m-n2-minus-1", Claim::even(Var::x)));
  CHECK_FALSE(fired(rd, "jacobi-m-3-mod-4", Claim::even(Var::x)));
}

TEST_CASE("worked example deductions") {
  const Instance inst = build_instance(4402337, 16, 2);
  const RuleReport r = apply_rules(inst, make_rule_context(inst));
  CHECK(fired(r, "gcd-m-n2-minus-1", Claim::even(Var::x)));
  CHECK(premise_mentions(r, "gcd-m-n2-minus-1", "= 17"));
  CHECK(fired(r, "divisor-sum-3-mod-8", Claim::even(Var::z)));
  CHECK(premise_mentions(r, "divisor-sum-3-mod-8", "d = 3 |"));
  CHECK(fired(r, "divisor-diff-3-5-mod-8", Claim::congruent(Var::y, Var::z)));
  CHECK(premise_mentions(r, "divisor-diff-3-5-mod-8", "d = 11 |"));
  const std::vector<Fact> facts = derive(inst);
  CHECK(implies(facts, Claim::even(Var::y), Assumptions{Tag::YGreaterOne}));
  CHECK(implies(facts, Claim::less(Var::x, Var::z), Assumptions{Tag::YGreaterOne, Tag::DeltaPositive}));
}

TEST_CASE("n = 0 (mod 4), m = 3 (mod 4) gives 2 | y and 2 | x") {
  const Instance inst = build_instance(7, 4, 2);
  const std::vector<Fact> facts = derive(inst);
  CHECK(implies(facts, Claim::even(Var::x), Assumptions{}));
  CHECK(implies(facts, Claim::even(Var::y), Assumptions{Tag::YGreaterOne}));
}

TEST_CASE("closure propagation and contradictions") {
  const Fact even_z{Claim::even(Var::z), {}, {"t1"}};
  const Fact yz{Claim::congruent(Var::y, Var::z), {}, {"t2"}};
  const ClosureResult c1 = closure({even_z, yz});
  CHECK(implies(c1.facts, Claim::even(Var::y), {}));
  CHECK(c1.contradictions.empty());

  const Fact even_x{Claim::even(Var::x), {}, {"t3"}};
  const ClosureResult c2 = closure({even_x});
  CHECK(c2.facts.size() == 1);

  const Assumptions A{Tag::YGreaterOne};
  const ClosureResult c3 = closure({{Claim::odd(Var::z), A, {"t4"}}, {Claim::even(Var::z), A, {"t5"}}});
  REQUIRE(c3.contradictions.size() == 1);
  CHECK(c3.contradictions[0].subject == Var::z);
  CHECK(c3.contradictions[0].assumptions == A);
  CHECK(contradiction_under(c3, A).has_value());
  CHECK_FALSE(contradiction_under(c3, Assumptions{}).has_value());
}

TEST_CASE("every fact carries provenance and rules are deterministic") {
  const Instance inst = build_instance(4402337, 16, 2);
  const std::vector<Fact> a = derive(inst);
  const std::vector<Fact> b = derive(inst);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK_FALSE(a[k].provenance.empty());
    CHECK(a[k].str() == b[k].str());
  }
}

TEST_CASE("facts hold for the trivial solution and for every found solution") {
  const long cases[][3] = {{2, 1, 2}, {3, 2, 2}, {4, 1, 2}, {7, 4, 2}, {2, 1, 6}, {5, 2, 2}, {8, 3, 2}, {11, 4, 2},
                           {4402337, 16, 2}, {1003, 2, 6}, {9, 2, 2}, {16, 7, 2}};
  for (const auto& c : cases) {
    const Instance inst = build_instance(c[0], c[1], static_cast<unsigned long>(c[2]));
    const std::vector<Fact> facts = derive(inst);
    const SearchReport rep = exhaustive_search(inst, {12, 12, 12});
    for (const Fact& f : facts) {
      if (f.assumptions.empty()) {
        const auto holds = claim_holds(f.claim, inst.r, 2, 2, inst.r);
        CHECK_MESSAGE(holds.value_or(true), f.str());
      }
      for (const Solution& s : rep.solutions) {
        if (!solution_meets(f.assumptions, inst.r, s.x, s.y, s.z)) continue;
        const auto holds = claim_holds(f.claim, inst.r, s.x, s.y, s.z);
        CHECK_MESSAGE(holds.value_or(true), f.str());
      }
    }
  }
}
