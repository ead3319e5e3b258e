#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include "expcert/certifier.hpp"
#include "expcert/config.hpp"
#include "expcert/search.hpp"
#include "expcert/serialize.hpp"

using namespace expcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitExtraSolutions = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BigInt parse_big(const std::string& name, const std::string& text) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) throw UsageError("--" + name + " expects an integer, got '" + text + "'");
  return v;
}

struct Range {
  long lo = 0;
  long hi = -1;
};

Range parse_range(const std::string& name, const std::string& text) {
  const auto sep = text.find(':');
  try {
    if (sep == std::string::npos) {
      const long v = std::stol(text);
      return {v, v};
    }
    return {std::stol(text.substr(0, sep)), std::stol(text.substr(sep + 1))};
  } catch (const std::exception&) {
    throw UsageError("--" + name + " expects lo:hi, got '" + text + "'");
  }
}

/// Writes to --out when given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw UsageError("cannot open " + path + " for writing");
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ------------------------------------------------------------ config layering

struct Overrides {
  std::string config_path;
  std::optional<unsigned long> precision_start;
  std::optional<unsigned long> precision_cap;
  std::optional<std::uint64_t> divisor_bound;
  std::optional<unsigned> jobs;
  std::optional<std::string> out;
  std::optional<unsigned long> x_max, y_max, z_max;
};

void add_common(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--precision-start", ov.precision_start, "Initial working precision in bits");
  cmd->add_option("--precision-cap", ov.precision_cap, "Maximum working precision in bits");
  cmd->add_option("--divisor-bound", ov.divisor_bound, "Trial-division bound for divisor rules");
}

Config resolve(const Overrides& ov) {
  Config cfg;
  if (!ov.config_path.empty()) cfg = load_config_file(ov.config_path, cfg);
  apply_env_overrides(cfg);
  if (ov.precision_start) cfg.precision_start_bits = *ov.precision_start;
  if (ov.precision_cap) cfg.precision_cap_bits = *ov.precision_cap;
  if (ov.divisor_bound) cfg.divisor_search_bound = *ov.divisor_bound;
  if (ov.jobs) cfg.jobs = *ov.jobs;
  if (ov.out) cfg.output = *ov.out;
  if (ov.x_max) cfg.x_max = *ov.x_max;
  if (ov.y_max) cfg.y_max = *ov.y_max;
  if (ov.z_max) cfg.z_max = *ov.z_max;
  validate(cfg);
  return cfg;
}

// ------------------------------------------------------------ commands

struct InstanceArgs {
  std::string m, n;
  unsigned long r = 2;
};

Instance make_instance(const InstanceArgs& a) { return build_instance(parse_big("m", a.m), parse_big("n", a.n), a.r); }

int run_generate(const InstanceArgs& args, const Config& cfg) {
  const Instance inst = make_instance(args);
  Sink sink(cfg.output);
  sink.out() << instance_json(inst, 2) << "\n";
  return kExitOk;
}

int run_certify(const InstanceArgs& args, const std::string& log10m, bool no_shortcuts, const Config& cfg) {
  EngineOptions opt = cfg.engine();
  opt.use_shortcuts = !no_shortcuts;
  Certificate cert;
  if (!log10m.empty()) {
    const BigInt n = parse_big("n", args.n);
    if (n < 1) throw InvalidInstance("n >= 1");
    if (args.r < 2 || args.r % 2 != 0) throw InvalidInstance("r even and >= 2");
    cert = certify_symbolic(log10m, n, args.r, opt);
  } else {
    cert = certify(make_instance(args), opt);
  }
  Sink sink(cfg.output);
  sink.out() << certificate_json(cert, 2) << "\n";
  return cert.verdict == Verdict::ConjectureHolds ? kExitOk : kExitUndecided;
}

int run_search(const InstanceArgs& args, bool no_sieve, const Config& cfg) {
  const Instance inst = make_instance(args);
  SieveConfig sieve = cfg.sieve();
  sieve.enabled = !no_sieve;
  const SearchReport rep = exhaustive_search(inst, cfg.box(), sieve);
  Sink sink(cfg.output);
  sink.out() << search_report_json(rep, 2) << "\n";
  const bool extra = std::any_of(rep.solutions.begin(), rep.solutions.end(),
                                 [&](const Solution& s) { return !(s == Solution{2, 2, inst.r}); });
  return extra ? kExitExtraSolutions : kExitOk;
}

void print_scan_text(std::ostream& out, const Instance& inst, const EliminationResult& res) {
  out << "(m, n) = (" << inst.m << ", " << inst.n << ")  q_limit = " << res.scan.q_limit
      << "  index_bound = " << res.scan.index_bound << "\n";
  for (const auto& e : res.scan.entries) {
    out << "  s = " << e.s << "  q_s = " << e.q_s << "  a_(s+1) = " << e.next_quotient << "  inequality "
        << (e.holds ? (*e.holds ? "holds" : "fails") : "undecided") << "\n";
  }
  out << "  small z: " << (res.small_z_excluded ? "excluded" : "a^3 + b = c^2") << "\n";
  out << to_string(res.verdict) << "\n";
}

std::vector<std::pair<BigInt, BigInt>> sweep_pairs(const std::string& family) {
  std::vector<std::pair<BigInt, BigInt>> out;
  if (family == "small-n") {
    // 2 | n, 4 <= n <= 64, n < m < 56n, m = 3 (mod 4), gcd(m, n) = 1
    for (long n = 4; n <= 64; n += 2) {
      for (long m = n + 1; m < 56 * n; ++m) {
        if (m % 4 == 3 && std::gcd(m, n) == 1) out.emplace_back(m, n);
      }
    }
  } else if (family == "six-powers") {
    // n = 6^t, m = 2^(2t-1) j - 1 with j = 1 (mod 4), n < m < 1.5n, t = 3..10
    for (unsigned long t = 3; t <= 10; ++t) {
      const auto range = six_power_j_range(t);
      if (!range) continue;
      BigInt n;
      mpz_ui_pow_ui(n.get_mpz_t(), 6, t);
      BigInt M = 1;
      M <<= 2 * t - 1;
      for (BigInt j = range->first; j <= range->second; j += 4) {
        const BigInt m = M * j - 1;
        if (gcd(m, n) == 1) out.emplace_back(m, n);
      }
    }
  } else {
    throw UsageError("--sweep expects small-n or six-powers");
  }
  return out;
}

int run_cfcheck(const InstanceArgs& args, const std::string& sweep, bool as_json, const std::string& multiplier,
                const Config& cfg) {
  const Real mult = Real::decimal(multiplier);
  Sink sink(cfg.output);
  if (sweep.empty()) {
    InstanceArgs a = args;
    a.r = 2;
    const Instance inst = make_instance(a);
    const EliminationResult res = eliminate_y1(inst, mult, cfg.schedule());
    if (as_json) {
      sink.out() << elimination_json(inst, res, 2) << "\n";
    } else {
      print_scan_text(sink.out(), inst, res);
    }
    return res.verdict == Elimination::Eliminated ? kExitOk : kExitUndecided;
  }

  std::size_t total = 0, eliminated = 0, max_s = 0;
  for (const auto& [m, n] : sweep_pairs(sweep)) {
    const Instance inst = build_instance(m, n, 2);
    const EliminationResult res = eliminate_y1(inst, mult, cfg.schedule());
    ++total;
    if (res.verdict == Elimination::Eliminated) ++eliminated;
    for (const auto& e : res.scan.entries) max_s = std::max(max_s, e.s);
    if (as_json) {
      nlohmann::json line = {{"schema_version", kSchemaVersion}, {"kind", "cfcheck-sweep"},
                             {"m", to_string(m)},               {"n", to_string(n)},
                             {"verdict", to_string(res.verdict)}, {"index_bound", res.scan.index_bound}};
      sink.out() << line.dump() << "\n";
    } else if (res.verdict != Elimination::Eliminated) {
      sink.out() << "(" << m << ", " << n << ") " << to_string(res.verdict) << ": " << res.note << "\n";
    }
  }
  std::cerr << sweep << ": " << eliminated << "/" << total << " eliminated, largest s scanned " << max_s << "\n";
  return eliminated == total ? kExitOk : kExitUndecided;
}

struct ScanArgs {
  std::string n_range;
  std::string m_range;
  long n_step = 1;
  long m_base_mult = 0;  // m = m_base_mult * n + offset
  int m_mod4 = -1;
  bool deterministic = false;
};

struct ScanItem {
  BigInt m, n;
};

std::vector<ScanItem> scan_items(const ScanArgs& a) {
  std::vector<ScanItem> out;
  const Range nr = parse_range("n-range", a.n_range);
  const Range mr = parse_range("m-range", a.m_range);
  if (a.n_step < 1) throw UsageError("--n-step must be positive");
  for (long n = nr.lo; n <= nr.hi; n += a.n_step) {
    if (n < 1) continue;
    for (long off = mr.lo; off <= mr.hi; ++off) {
      const long m = a.m_base_mult * n + off;
      if (m <= n || std::gcd(m, n) != 1 || (m - n) % 2 == 0) continue;
      if (a.m_mod4 >= 0 && m % 4 != a.m_mod4) continue;
      out.push_back({m, n});
    }
  }
  return out;
}

int run_scan(const ScanArgs& args, unsigned long r, const Config& cfg) {
  const std::vector<ScanItem> items = scan_items(args);
  Sink sink(cfg.output);
  const EngineOptions opt = cfg.engine();

  std::vector<std::optional<std::string>> done(items.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::map<std::string, std::size_t> histogram;

  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= items.size()) return;
      const auto start = std::chrono::steady_clock::now();
      nlohmann::json line = {{"schema_version", kSchemaVersion},
                             {"kind", "scan"},
                             {"m", to_string(items[k].m)},
                             {"n", to_string(items[k].n)},
                             {"r", r}};
      std::string verdict;
      try {
        const Certificate cert = certify(build_instance(items[k].m, items[k].n, r), opt);
        verdict = to_string(cert.verdict);
        line["open_branches"] = cert.open_branches;
      } catch (const std::exception& e) {
        verdict = "Error";
        line["error"] = e.what();
      }
      line["verdict"] = verdict;
      if (!args.deterministic) {
        line["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
      std::lock_guard<std::mutex> lock(mu);
      ++histogram[verdict];
      done[k] = line.dump();
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::max(1u, cfg.jobs); ++j) pool.emplace_back(worker);
  // Lines are emitted in input order as soon as each prefix completes.
  for (std::size_t k = 0; k < items.size(); ++k) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return done[k].has_value(); });
    std::string text = std::move(*done[k]);
    done[k] = std::string();
    lock.unlock();
    sink.out() << text << "\n";
    sink.out().flush();
  }
  for (auto& t : pool) t.join();
  for (const auto& [verdict, count] : histogram) std::cerr << verdict << ": " << count << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified checks for a^x + b^y = c^z over Pythagorean-type triples"};
  app.require_subcommand(1);
  Overrides ov;
  app.add_option("--config", ov.config_path, "key = value configuration file")->check(CLI::ExistingFile);

  InstanceArgs inst_args;
  auto add_instance = [&](CLI::App* cmd, bool need_m) {
    auto* m = cmd->add_option("--m", inst_args.m, "m > n >= 1");
    if (need_m) m->required();
    cmd->add_option("--n", inst_args.n, "n >= 1")->required();
  };

  auto* gen = app.add_subcommand("generate", "Build (a, b, c) from (m, n, r)");
  add_instance(gen, true);
  gen->add_option("--r", inst_args.r, "Even exponent r >= 2")->required();
  gen->add_option("--out", ov.out, "Output file");

  std::string log10m;
  bool no_shortcuts = false;
  auto* cert = app.add_subcommand("certify", "Run the certifier");
  add_instance(cert, false);
  cert->add_option("--r", inst_args.r, "Even exponent r >= 2")->required();
  cert->add_option("--log10m", log10m, "Symbolic mode: decimal log10 m, large-m hypotheses only");
  cert->add_flag("--no-shortcuts", no_shortcuts, "Do not use whole-instance checks to close branches");
  cert->add_option("--out", ov.out, "Output file");
  add_common(cert, ov);

  bool no_sieve = false;
  auto* search = app.add_subcommand("search", "Enumerate solutions in an exponent box");
  add_instance(search, true);
  search->add_option("--r", inst_args.r, "Even exponent r >= 2")->required();
  search->add_option("--xmax", ov.x_max, "Largest x");
  search->add_option("--ymax", ov.y_max, "Largest y");
  search->add_option("--zmax", ov.z_max, "Largest z");
  search->add_option("--jobs", ov.jobs, "Worker threads");
  search->add_flag("--no-sieve", no_sieve, "Disable the modular pre-filter");
  search->add_option("--out", ov.out, "Output file");

  std::string sweep;
  bool as_json = false;
  std::string multiplier = "1534";
  auto* cf = app.add_subcommand("cfcheck", "Convergent scan eliminating y = 1 (r = 2)");
  cf->add_option("--m", inst_args.m, "m > n >= 1");
  cf->add_option("--n", inst_args.n, "n >= 1");
  cf->add_option("--sweep", sweep, "Run a family: small-n or six-powers");
  cf->add_option("--multiplier", multiplier, "Scan q_s below multiplier * log c");
  cf->add_flag("--json", as_json, "JSON output");
  cf->add_option("--out", ov.out, "Output file");
  add_common(cf, ov);

  ScanArgs scan_args;
  unsigned long scan_r = 2;
  auto* scan = app.add_subcommand("scan", "Certify a range of (m, n), one JSON line each");
  scan->add_option("--n-range", scan_args.n_range, "lo:hi")->required();
  scan->add_option("--m-range", scan_args.m_range, "lo:hi, offsets when --m-base is set")->required();
  scan->add_option("--n-step", scan_args.n_step, "Stride over n");
  scan->add_option("--m-base", scan_args.m_base_mult, "m = m_base * n + offset");
  scan->add_option("--m-mod4", scan_args.m_mod4, "Keep only m with this residue mod 4");
  scan->add_option("--r", scan_r, "Even exponent r >= 2");
  scan->add_option("--jobs", ov.jobs, "Worker threads");
  scan->add_flag("--deterministic", scan_args.deterministic, "Omit timing fields");
  scan->add_option("--out", ov.out, "Output JSONL file");
  add_common(scan, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    const Config cfg = resolve(ov);
    if (*gen) return run_generate(inst_args, cfg);
    if (*cert) return run_certify(inst_args, log10m, no_shortcuts, cfg);
    if (*search) return run_search(inst_args, no_sieve, cfg);
    if (*cf) {
      if (sweep.empty() && (inst_args.m.empty() || inst_args.n.empty())) {
        throw UsageError("cfcheck needs --m and --n, or --sweep");
      }
      return run_cfcheck(inst_args, sweep, as_json, multiplier, cfg);
    }
    if (*scan) return run_scan(scan_args, scan_r, cfg);
  } catch (const InvalidInstance& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
