#include "expcert/search.hpp"

#include <algorithm>
#include <functional>
#include <thread>

namespace expcert {

namespace {

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) { return mpz_fdiv_ui(v.get_mpz_t(), m); }

std::vector<std::uint64_t> power_table(const BigInt& base, std::uint64_t m, unsigned long count) {
  std::vector<std::uint64_t> t(count + 1);
  const std::uint64_t b = mod_u64(base, m);
  t[0] = 1 % m;
  for (unsigned long k = 1; k <= count; ++k) {
    t[k] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(t[k - 1]) * b) % m);
  }
  return t;
}

// Exponent k with rest = b^k, or 0 when rest is not a positive power of b.
unsigned long power_of(BigInt rest, const BigInt& b) {
  if (b < 2 || rest < b) return 0;
  unsigned long k = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), b.get_mpz_t())) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), b.get_mpz_t());
    ++k;
  }
  return rest == 1 ? k : 0;
}

struct Partial {
  std::vector<Solution> solutions;
  std::vector<ModulusStat> stats;
  std::uint64_t candidates = 0;
  std::uint64_t exact_checks = 0;
};

}  // namespace

bool SearchReport::only_trivial() const {
  return solutions.size() == 1 && solutions[0] == Solution{2, 2, inst.r};
}

std::vector<std::uint64_t> sieve_moduli(const Instance& inst, const SieveConfig& sieve) {
  std::vector<std::uint64_t> out;
  auto add = [&](std::uint64_t m) {
    if (m > 1 && std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  for (auto m : sieve.moduli) add(m);
  if (sieve.add_c_neighbour_primes) {
    for (std::uint32_t p : small_primes()) {
      if (p >= 1000) break;
      if (mpz_divisible_ui_p(BigInt(inst.c - 1).get_mpz_t(), p) ||
          mpz_divisible_ui_p(BigInt(inst.c + 1).get_mpz_t(), p)) {
        add(p);
      }
    }
  }
  return out;
}

bool sieve_admissible(const Instance& inst, unsigned long x, unsigned long y, unsigned long z,
                      const std::vector<std::uint64_t>& moduli) {
  for (std::uint64_t m : moduli) {
    const BigInt M(static_cast<unsigned long>(m));
    const BigInt lhs = modpow(inst.a, x, M) + modpow(inst.b, y, M);
    if (BigInt(lhs % M) != modpow(inst.c, z, M)) return false;
  }
  return true;
}

bool verify_solution(const Instance& inst, unsigned long x, unsigned long y, unsigned long z) {
  BigInt ax, by, cz;
  mpz_pow_ui(ax.get_mpz_t(), inst.a.get_mpz_t(), x);
  mpz_pow_ui(by.get_mpz_t(), inst.b.get_mpz_t(), y);
  mpz_pow_ui(cz.get_mpz_t(), inst.c.get_mpz_t(), z);
  return ax + by == cz;
}

SearchReport exhaustive_search(const Instance& inst, const SearchBox& box, const SieveConfig& sieve) {
  SearchReport report;
  report.inst = inst;
  report.box = box;

  const std::vector<std::uint64_t> moduli = sieve.enabled ? sieve_moduli(inst, sieve) : std::vector<std::uint64_t>{};
  std::vector<std::vector<std::uint64_t>> ta, tb, tc;
  for (auto m : moduli) {
    ta.push_back(power_table(inst.a, m, box.x_max));
    tb.push_back(power_table(inst.b, m, box.y_max));
    tc.push_back(power_table(inst.c, m, box.z_max));
  }

  const std::size_t c_bits = mpz_sizeinbase(inst.c.get_mpz_t(), 2);
  unsigned long z_last = box.z_max;
  if (c_bits * box.z_max > sieve.bit_cap) {
    z_last = static_cast<unsigned long>(sieve.bit_cap / c_bits);
    report.truncations.push_back("z > " + std::to_string(z_last) + " skipped: c^z exceeds " +
                                 std::to_string(sieve.bit_cap) + " bits");
  }

  auto work = [&](unsigned slot, unsigned stride, Partial& part) {
    part.stats.resize(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) part.stats[i].modulus = moduli[i];
    std::vector<char> alive(box.y_max + 1);
    for (unsigned long z = 1 + slot; z <= z_last; z += stride) {
      BigInt cz;
      mpz_pow_ui(cz.get_mpz_t(), inst.c.get_mpz_t(), z);
      BigInt ax = 1;
      for (unsigned long x = 1; x <= box.x_max; ++x) {
        ax *= inst.a;
        if (ax >= cz) break;
        part.candidates += box.y_max;
        bool any = moduli.empty();
        if (!moduli.empty()) {
          for (unsigned long y = 1; y <= box.y_max; ++y) {
            alive[y] = 1;
            for (std::size_t i = 0; i < moduli.size(); ++i) {
              ++part.stats[i].tested;
              if ((ta[i][x] + tb[i][y]) % moduli[i] != tc[i][z]) {
                ++part.stats[i].rejected;
                alive[y] = 0;
                break;
              }
            }
            any = any || alive[y];
          }
        }
        if (!any) continue;
        ++part.exact_checks;
        const unsigned long y = power_of(BigInt(cz - ax), inst.b);
        if (y == 0 || y > box.y_max) continue;
        if (!moduli.empty() && !alive[y]) {
          throw std::logic_error("internal fault: sieve rejected an exact solution");
        }
        part.solutions.push_back(Solution{x, y, z});
      }
    }
  };

  const unsigned jobs = std::max(1u, sieve.jobs);
  std::vector<Partial> parts(jobs);
  if (jobs == 1) {
    work(0, 1, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs, std::ref(parts[j]));
    for (auto& t : pool) t.join();
  }

  report.sieve_stats.resize(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) report.sieve_stats[i].modulus = moduli[i];
  for (const Partial& p : parts) {
    report.solutions.insert(report.solutions.end(), p.solutions.begin(), p.solutions.end());
    report.candidates += p.candidates;
    report.exact_checks += p.exact_checks;
    for (std::size_t i = 0; i < p.stats.size(); ++i) {
      report.sieve_stats[i].tested += p.stats[i].tested;
      report.sieve_stats[i].rejected += p.stats[i].rejected;
    }
  }
  std::sort(report.solutions.begin(), report.solutions.end());
  return report;
}

}  // namespace expcert
