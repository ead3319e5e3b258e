#include "expcert/serialize.hpp"

#include <json.hpp>

namespace expcert {

namespace {

using nlohmann::json;

json big(const BigInt& v) { return to_string(v); }

json comparison(const Comparison& c) {
  return {{"lhs", c.lhs_expr},
          {"rhs", c.rhs_expr},
          {"lhs_interval", c.lhs_interval},
          {"rhs_interval", c.rhs_interval},
          {"result", to_string(c.result)},
          {"precision_bits", c.precision_bits},
          {"exact", c.exact_path}};
}

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

json instance_summary(const Instance& inst) {
  json j = {{"m", big(inst.m)}, {"n", big(inst.n)}, {"r", inst.r},
            {"a", big(inst.a)}, {"b", big(inst.b)}, {"c", big(inst.c)}};
  BigInt a2 = inst.a * inst.a;
  BigInt b2 = inst.b * inst.b;
  BigInt cr;
  mpz_pow_ui(cr.get_mpz_t(), inst.c.get_mpz_t(), inst.r);
  j["identity"] = {{"statement", "a^2 + b^2 = c^r"}, {"holds", BigInt(a2 + b2) == cr}};
  j["gcd_a_b"] = big(gcd(inst.a, inst.b));
  j["K"] = to_string(inst.K());
  if (auto p = try_two_adic_profile(inst.m, inst.n)) {
    j["two_adic_profile"] = {{"even_member", p->n_even ? "n" : "m"},
                             {"alpha", p->alpha},
                             {"i", big(p->i)},
                             {"beta", p->beta},
                             {"j", big(p->j)},
                             {"e", p->e},
                             {"balanced", p->balanced()}};
  } else {
    j["two_adic_profile"] = nullptr;
  }
  return j;
}

json fact(const Fact& f) {
  return {{"claim", f.claim.str()}, {"assumptions", f.assumptions.labels()}, {"provenance", f.provenance}};
}

json bound_eval(const BoundEval& b) {
  return {{"bound_id", b.bound_id},
          {"subject", b.subject},
          {"direction", to_string(b.direction)},
          {"strict", b.strict},
          {"interval", b.interval},
          {"integer", b.integer ? big(*b.integer) : json(nullptr)},
          {"note", b.note}};
}

void flatten(const TraceNode& node, const std::string& parent, json& out) {
  const std::string path = parent.empty() ? node.label : parent + "/" + node.label;
  json j = {{"path", path},
            {"label", node.label},
            {"assumptions", node.assumptions.labels()},
            {"facts", node.facts},
            {"closure", node.children.empty() ? to_string(node.closure) : std::string("split")},
            {"closed", node.closed()},
            {"externally_sourced", node.closure == Closure::ExternalCitation},
            {"detail", node.detail}};
  json bounds = json::array();
  for (const auto& b : node.bounds) bounds.push_back(bound_eval(b));
  j["bounds"] = std::move(bounds);
  if (node.conflict) {
    const Conflict& c = *node.conflict;
    j["conflict"] = {{"subject", c.subject},
                     {"lower_source", c.lower_source},
                     {"lower", c.lower},
                     {"upper_source", c.upper_source},
                     {"upper", c.upper}};
  } else {
    j["conflict"] = nullptr;
  }
  json children = json::array();
  for (const auto& c : node.children) children.push_back(path + "/" + c.label);
  j["children"] = std::move(children);
  out.push_back(std::move(j));
  for (const auto& c : node.children) flatten(c, path, out);
}

json shortcut(const ShortcutResult& s) {
  json hyps = json::array();
  for (const auto& h : s.hypotheses) {
    hyps.push_back({{"statement", h.statement},
                    {"holds", optional_bool(h.holds)},
                    {"comparison", h.comparison ? comparison(*h.comparison) : json(nullptr)}});
  }
  return {{"name", s.name},
          {"applicable", s.applicable},
          {"informational", s.informational},
          {"note", s.note},
          {"hypotheses", std::move(hyps)}};
}

json stamped(const char* kind) { return {{"schema_version", kSchemaVersion}, {"kind", kind}}; }

std::string dump(const json& j, int indent) { return j.dump(indent); }

}  // namespace

std::string instance_json(const Instance& inst, int indent) {
  json j = stamped("instance");
  j["instance"] = instance_summary(inst);
  return dump(j, indent);
}

std::string certificate_json(const Certificate& cert, int indent) {
  json j = stamped("certificate");
  if (cert.symbolic) {
    j["instance"] = {{"n", big(cert.inst.n)}, {"r", cert.inst.r}, {"log10_m", cert.log10_m}, {"symbolic", true}};
  } else {
    j["instance"] = instance_summary(cert.inst);
  }
  j["verdict"] = to_string(cert.verdict);

  json rules = json::array();
  for (const auto& d : cert.rules) {
    rules.push_back({{"rule_id", d.rule_id}, {"premises", d.premises}, {"conclusion", fact(d.conclusion)}});
  }
  j["rules"] = std::move(rules);
  json skipped = json::array();
  for (const auto& n : cert.not_attempted) skipped.push_back({{"rule_id", n.rule_id}, {"reason", n.reason}});
  j["not_attempted"] = std::move(skipped);

  json trace = json::array();
  flatten(cert.trace, "", trace);
  j["trace"] = std::move(trace);

  json shortcuts = json::array();
  for (const auto& s : cert.shortcuts) shortcuts.push_back(shortcut(s));
  j["shortcuts"] = std::move(shortcuts);

  json evidence = json::array();
  for (const auto& e : cert.evidence) {
    json c = comparison(e.comparison);
    c["label"] = e.label;
    evidence.push_back(std::move(c));
  }
  j["numeric_evidence"] = std::move(evidence);
  j["open_branches"] = cert.open_branches;
  return dump(j, indent);
}

std::string search_report_json(const SearchReport& report, int indent) {
  json j = stamped("search");
  j["instance"] = instance_summary(report.inst);
  j["box"] = {{"x_max", report.box.x_max}, {"y_max", report.box.y_max}, {"z_max", report.box.z_max}};
  json sols = json::array();
  for (const auto& s : report.solutions) sols.push_back({s.x, s.y, s.z});
  j["solutions"] = std::move(sols);
  j["only_trivial"] = report.only_trivial();
  json sieve = json::array();
  for (const auto& s : report.sieve_stats) {
    sieve.push_back({{"modulus", s.modulus}, {"tested", s.tested}, {"rejected", s.rejected}});
  }
  j["sieve"] = std::move(sieve);
  j["candidates"] = report.candidates;
  j["exact_checks"] = report.exact_checks;
  j["truncations"] = report.truncations;
  return dump(j, indent);
}

std::string elimination_json(const Instance& inst, const EliminationResult& res, int indent) {
  json j = stamped("cfcheck");
  j["instance"] = instance_summary(inst);
  j["verdict"] = to_string(res.verdict);
  j["note"] = res.note;
  j["small_z_excluded"] = res.small_z_excluded;
  j["q_limit"] = big(res.scan.q_limit);
  j["index_bound"] = res.scan.index_bound;

  const ContinuedFraction& cf = res.scan.cf;
  json pq = json::array();
  json qs = json::array();
  for (std::size_t k = 0; k < cf.size(); ++k) {
    pq.push_back(big(cf.partial_quotients[k]));
    qs.push_back(big(cf.denominators[k]));
  }
  j["continued_fraction"] = {{"partial_quotients", std::move(pq)},
                             {"denominators", std::move(qs)},
                             {"certified", cf.certified},
                             {"rational", cf.rational},
                             {"truncated", cf.truncated},
                             {"precision_bits", cf.precision_bits}};

  json entries = json::array();
  for (const auto& e : res.scan.entries) {
    entries.push_back({{"s", e.s},
                       {"q_s", big(e.q_s)},
                       {"next_quotient", e.next_quotient != 0 ? big(e.next_quotient) : json(nullptr)},
                       {"holds", optional_bool(e.holds)},
                       {"comparison", e.comparison ? comparison(*e.comparison) : json(nullptr)}});
  }
  j["entries"] = std::move(entries);
  j["witnesses"] = res.witnesses;
  return dump(j, indent);
}

}  // namespace expcert
