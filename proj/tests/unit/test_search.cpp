#include <doctest.h>

#include <algorithm>
#include <array>

#include "expcert/search.hpp"
#include "oracles.hpp"

using namespace expcert;

namespace {

std::vector<Solution> from_oracle(const Instance& inst, const SearchBox& box) {
  std::vector<Solution> out;
  for (const auto& t : oracle::brute_solutions(inst.a, inst.b, inst.c, box.x_max, box.y_max, box.z_max)) {
    out.push_back({t.x, t.y, t.z});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("reference boxes contain only the trivial solution") {
  const auto check = [](const BigInt& m, const BigInt& n, unsigned long r, const SearchBox& box) {
    const SearchReport rep = exhaustive_search(build_instance(m, n, r), box);
    CHECK(rep.solutions == std::vector<Solution>{{2, 2, r}});
    CHECK(rep.only_trivial());
  };
  check(2, 1, 2, {30, 30, 30});
  check(4, 1, 2, {30, 30, 30});
  check(2, 1, 6, {20, 20, 20});
}

TEST_CASE("sieve admissibility") {
  const Instance inst = build_instance(2, 1, 2);  // 3^x + 4^y = 5^z
  CHECK_FALSE(sieve_admissible(inst, 1, 1, 1, {4}));
  CHECK(sieve_admissible(inst, 1, 1, 1, {}));
  CHECK(sieve_admissible(inst, 2, 2, 2, {8, 3, 5, 7, 16, 9}));
}

TEST_CASE("exact verification") {
  const Instance inst = build_instance(2, 1, 2);
  CHECK(verify_solution(inst, 2, 2, 2));
  CHECK_FALSE(verify_solution(inst, 2, 2, 3));
  CHECK_FALSE(verify_solution(inst, 1, 1, 1));
}

TEST_CASE("sieve never rejects a true solution") {
  const std::vector<std::array<long, 3>> cases{{2, 1, 2}, {4, 1, 2}, {3, 2, 2}, {5, 2, 2}, {4, 3, 2},
                                               {6, 1, 2}, {5, 4, 2}, {2, 1, 6}, {7, 2, 2}, {8, 3, 2}};
  const SearchBox box{15, 15, 15};
  for (const auto& [m, n, r] : cases) {
    const Instance inst = build_instance(m, n, static_cast<unsigned long>(r));
    const auto moduli = sieve_moduli(inst, SieveConfig{});
    for (const auto& s : from_oracle(inst, box)) CHECK(sieve_admissible(inst, s.x, s.y, s.z, moduli));
  }
}

TEST_CASE("search agrees with direct evaluation") {
  const std::vector<std::array<long, 3>> cases{{2, 1, 2}, {3, 2, 2}, {4, 1, 2}, {5, 2, 2}, {2, 1, 4}, {4, 3, 2}};
  const SearchBox box{14, 14, 14};
  for (const auto& [m, n, r] : cases) {
    const Instance inst = build_instance(m, n, static_cast<unsigned long>(r));
    const auto expected = from_oracle(inst, box);
    CHECK(exhaustive_search(inst, box).solutions == expected);
    SieveConfig off;
    off.enabled = false;
    CHECK(exhaustive_search(inst, box, off).solutions == expected);
  }
}

TEST_CASE("a larger box keeps every solution of a smaller one") {
  const Instance inst = build_instance(3, 2, 2);
  const auto small = exhaustive_search(inst, {8, 8, 8}).solutions;
  const auto large = exhaustive_search(inst, {16, 16, 16}).solutions;
  for (const auto& s : small) CHECK(std::find(large.begin(), large.end(), s) != large.end());
}

TEST_CASE("parallel search matches the single-threaded result") {
  const Instance inst = build_instance(4, 1, 2);
  SieveConfig one, many;
  many.jobs = 4;
  const SearchReport a = exhaustive_search(inst, {20, 20, 20}, one);
  const SearchReport b = exhaustive_search(inst, {20, 20, 20}, many);
  CHECK(a.solutions == b.solutions);
  CHECK(a.candidates == b.candidates);
  CHECK(a.exact_checks == b.exact_checks);
}
