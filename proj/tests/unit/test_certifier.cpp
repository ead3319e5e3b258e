#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "expcert/certifier.hpp"
#include "expcert/serialize.hpp"
#include "oracles.hpp"

using namespace expcert;

namespace {

bool every_leaf_closed(const TraceNode& node) {
  if (node.children.empty()) return node.closure != Closure::Open;
  return std::all_of(node.children.begin(), node.children.end(), every_leaf_closed);
}

const TraceNode* find_node(const TraceNode& node, const std::function<bool(const TraceNode&)>& pred) {
  if (pred(node)) return &node;
  for (const auto& c : node.children) {
    if (const TraceNode* hit = find_node(c, pred)) return hit;
  }
  return nullptr;
}

bool has_rule(const Certificate& cert, const std::string& id) {
  return std::any_of(cert.rules.begin(), cert.rules.end(), [&](const Deduction& d) { return d.rule_id == id; });
}

}  // namespace

TEST_CASE("worked example is fully certified") {
  const Certificate cert = certify(build_instance(4402337, 16, 2));
  CHECK(cert.verdict == Verdict::ConjectureHolds);
  CHECK(cert.open_branches.empty());
  CHECK(cert.trace.closed());
  CHECK(every_leaf_closed(cert.trace));
  CHECK(has_rule(cert, "gcd-m-n2-minus-1"));
  CHECK(has_rule(cert, "divisor-sum-3-mod-8"));
  CHECK(has_rule(cert, "divisor-diff-3-5-mod-8"));
  const auto gcd_rule = std::find_if(cert.rules.begin(), cert.rules.end(),
                                     [](const Deduction& d) { return d.rule_id == "gcd-m-n2-minus-1"; });
  REQUIRE(gcd_rule != cert.rules.end());
  CHECK(std::find(gcd_rule->premises.begin(), gcd_rule->premises.end(), "gcd(m, n^2 - 1) = 17 > 1") !=
        gcd_rule->premises.end());

  const TraceNode* y_conflict = find_node(cert.trace, [](const TraceNode& n) {
    return n.closure == Closure::BoundConflict && n.conflict && n.conflict->subject == "Y";
  });
  REQUIRE(y_conflict != nullptr);
  CHECK(find_node(cert.trace, [](const TraceNode& n) { return n.closure == Closure::ParityContradiction; }));
}

TEST_CASE("reference verdicts") {
  CHECK(certify(build_instance(3587, 64, 2)).verdict == Verdict::ConjectureHolds);
  CHECK(certify(build_instance(7, 4, 2)).verdict == Verdict::ConjectureHolds);
  CHECK(certify(build_instance(1003, 2, 6)).verdict == Verdict::ConjectureHolds);

  const Certificate open = certify(build_instance(3, 2, 2));
  CHECK(open.verdict == Verdict::Undecided);
  CHECK_FALSE(open.open_branches.empty());
  CHECK_FALSE(open.trace.closed());
  CHECK(certify(build_instance(2, 1, 2)).verdict == Verdict::Undecided);
}

TEST_CASE("y = 1 for r = 2 is closed by the convergent scan") {
  const Certificate cert = certify(build_instance(7, 4, 2));
  CHECK(find_node(cert.trace, [](const TraceNode& n) { return n.closure == Closure::CfElimination; }));
}

TEST_CASE("certificates are deterministic") {
  const Instance inst = build_instance(4402337, 16, 2);
  CHECK(certificate_json(certify(inst)) == certificate_json(certify(inst)));
  const Instance open = build_instance(3, 2, 2);
  CHECK(certificate_json(certify(open)) == certificate_json(certify(open)));
}

TEST_CASE("shortcut records") {
  const auto results = check_shortcuts(build_instance(3587, 64, 2));
  REQUIRE_FALSE(results.empty());
  for (const auto& s : results) {
    CHECK_FALSE(s.name.empty());
    if (s.applicable) {
      for (const auto& h : s.hypotheses) CHECK(h.holds == std::optional<bool>(true));
    }
  }
  const ShortcutResult r6 = check_alpha_one(build_instance(1003, 2, 6));
  CHECK(r6.applicable);
}

TEST_CASE("symbolic large-m evaluation") {
  CHECK(certify_symbolic("1e15", 4, 2).verdict == Verdict::ConjectureHolds);
  CHECK(certify_symbolic("3.5547", 4, 2).verdict == Verdict::Undecided);
  const ShortcutResult big = check_large_m_symbolic("1e15", 4, 2);
  CHECK(big.applicable);
  CHECK_FALSE(check_large_m(build_instance(3587, 4, 2)).applicable);
}

TEST_CASE("j ranges for n = 6^t match a direct scan") {
  const std::vector<std::pair<int, int>> expected{{9, 9},   {13, 13}, {17, 21},  {25, 33},
                                                  {37, 49}, {53, 73}, {77, 113}, {117, 169}};
  for (unsigned long t = 3; t <= 10; ++t) {
    const auto range = six_power_j_range(t);
    REQUIRE(range.has_value());
    CHECK(range->first == expected[t - 3].first);
    CHECK(range->second == expected[t - 3].second);

    const oracle::Z n = oracle::pow(6, t);
    const oracle::Z M = oracle::pow(2, 2 * t - 1);
    std::vector<oracle::Z> js;
    for (oracle::Z j = 1; M * j - 1 < 3 * n / 2 + 1; j += 4) {
      const oracle::Z v = M * j - 1;
      if (v > n && 2 * v < 3 * n) js.push_back(j);
    }
    REQUIRE_FALSE(js.empty());
    CHECK(range->first == js.front());
    CHECK(range->second == js.back());
  }
}

TEST_CASE("family predicates") {
  CHECK(cited_congruence_family(4, 7));
  CHECK(cited_congruence_family(7, 4));
  CHECK(cited_congruence_family(23, 12));
  CHECK_FALSE(cited_congruence_family(3, 2));
  CHECK_FALSE(cited_congruence_family(12, 7 + 16 * 2 + 2));

  for (long m = 3; m < 200; m += 2) {
    for (long n = 2; n < m; n += 2) {
      if (oracle::Z(std::gcd(m, n)) != 1) continue;
      const auto p = try_two_adic_profile(m, n);
      if (!p) continue;
      const bool family = 2 * p->alpha == p->beta + 1 && mpz_fdiv_ui(p->j.get_mpz_t(), 4) == 1;
      CHECK(in_excluded_family(*p, false) == family);
      CHECK(in_excluded_family(*p, true) == (family && p->alpha >= 3));
    }
  }
}
