#include "expcert/numth.hpp"

#include <algorithm>
#include <array>

namespace expcert {

namespace {

constexpr std::uint32_t kSieveLimit = 1'000'000;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

bool miller_rabin_64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                          31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for n < 3.3 * 10^24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                          31ULL, 37ULL}) {
    std::uint64_t x = modpow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool fits_u64(const BigInt& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const BigInt& n) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

void require_prime(const BigInt& p, const char* what) {
  if (p < 2 || !is_prime(p)) {
    throw std::invalid_argument(std::string(what) + ": p must be prime, got " + to_string(p));
  }
}

}  // namespace

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

int jacobi(const BigInt& a_in, const BigInt& n_in) {
  if (n_in <= 1 || mpz_even_p(n_in.get_mpz_t())) {
    throw std::invalid_argument("jacobi: modulus must be odd and > 1, got " + to_string(n_in));
  }
  BigInt n = n_in;
  BigInt a;
  mpz_mod(a.get_mpz_t(), a_in.get_mpz_t(), n.get_mpz_t());
  int result = 1;
  while (a != 0) {
    while (mpz_even_p(a.get_mpz_t())) {
      a >>= 1;
      const unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) result = -result;
    mpz_mod(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  }
  return n == 1 ? result : 0;
}

unsigned long ord_p(const BigInt& n, const BigInt& p) {
  if (sgn(n) == 0) throw std::invalid_argument("ord_p: n must be nonzero");
  require_prime(p, "ord_p");
  BigInt rest = abs(n);
  return mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
}

BigInt p_part(const BigInt& n, const BigInt& p) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), ord_p(n, p));
  return out;
}

unsigned long lte_valuation(const BigInt& u, const BigInt& v, const BigInt& p, const BigInt& k) {
  require_prime(p, "lte_valuation");
  if (k < 1) throw LteHypothesisError("lte_valuation: k must be >= 1");
  if (u == v) throw LteHypothesisError("lte_valuation: U and V must be distinct");
  if (gcd(u, v) != 1) throw LteHypothesisError("lte_valuation: gcd(U, V) must be 1");
  const BigInt diff = u - v;
  if (p == 2) {
    if (mpz_fdiv_ui(diff.get_mpz_t(), 4) != 0) {
      throw LteHypothesisError("lte_valuation: p = 2 requires U = V (mod 4)");
    }
  } else if (!mpz_divisible_p(diff.get_mpz_t(), p.get_mpz_t())) {
    throw LteHypothesisError("lte_valuation: odd p requires U = V (mod p)");
  }
  return ord_p(diff, p) + ord_p(k, p);
}

BigInt modpow(const BigInt& base, const BigInt& exponent, const BigInt& modulus) {
  if (modulus < 2) throw std::invalid_argument("modpow: modulus must be >= 2");
  if (sgn(exponent) < 0) throw std::invalid_argument("modpow: exponent must be >= 0");
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

std::uint64_t modpow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("modpow: modulus must be >= 2");
  std::uint64_t result = 1 % modulus;
  base %= modulus;
  while (exponent > 0) {
    if (exponent & 1) result = mulmod(result, base, modulus);
    base = mulmod(base, base, modulus);
    exponent >>= 1;
  }
  return result;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<std::uint32_t> out;
    out.reserve(80'000);
    for (std::uint32_t i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kSieveLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

Primality primality(const BigInt& n) {
  if (n < 2) return Primality::Composite;
  const auto& primes = small_primes();
  if (n <= kSieveLimit) {
    const auto v = static_cast<std::uint32_t>(n.get_ui());
    return std::binary_search(primes.begin(), primes.end(), v) ? Primality::Prime
                                                                : Primality::Composite;
  }
  for (std::size_t idx = 0; idx < 168; ++idx) {  // primes below 1000
    if (mpz_divisible_ui_p(n.get_mpz_t(), primes[idx])) return Primality::Composite;
  }
  if (fits_u64(n)) return miller_rabin_64(to_u64(n)) ? Primality::Prime : Primality::Composite;
  switch (mpz_probab_prime_p(n.get_mpz_t(), 64)) {
    case 2:
      return Primality::Prime;
    case 1:
      return Primality::ProbablePrime;
    default:
      return Primality::Composite;
  }
}

bool is_prime(const BigInt& n) { return primality(n) != Primality::Composite; }

Factorization trial_factor(const BigInt& n, std::uint64_t bound) {
  if (n < 1) throw std::invalid_argument("trial_factor: n must be >= 1");
  Factorization f;
  BigInt rest = n;
  bool exhausted_sqrt = false;
  for (std::uint32_t p : small_primes()) {
    if (p > bound) break;
    if (BigInt{p} * p > rest) {
      exhausted_sqrt = true;
      break;
    }
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    PrimePower pp{BigInt{p}, 0};
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++pp.exponent;
    }
    f.factors.push_back(std::move(pp));
  }
  f.cofactor = rest;
  if (rest == 1) {
    f.cofactor_status = Factorization::Cofactor::One;
  } else if (exhausted_sqrt) {
    f.cofactor_status = Factorization::Cofactor::Prime;
  } else {
    switch (primality(rest)) {
      case Primality::Prime:
        f.cofactor_status = Factorization::Cofactor::Prime;
        break;
      case Primality::ProbablePrime:
        f.cofactor_status = Factorization::Cofactor::ProbablePrime;
        break;
      case Primality::Composite:
        f.cofactor_status = Factorization::Cofactor::Unfactored;
        break;
    }
  }
  return f;
}

std::vector<BigInt> divisors(const Factorization& f) {
  std::vector<BigInt> divs{BigInt{1}};
  for (const auto& pp : f.factors) {
    const std::size_t base_count = divs.size();
    BigInt power = 1;
    for (unsigned long e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base_count; ++i) divs.push_back(divs[i] * power);
    }
  }
  if (f.cofactor > 1) {
    const std::size_t base_count = divs.size();
    for (std::size_t i = 0; i < base_count; ++i) divs.push_back(divs[i] * f.cofactor);
  }
  std::sort(divs.begin(), divs.end());
  divs.erase(divs.begin());  // drop 1
  return divs;
}

PerfectPower perfect_power_root(const BigInt& n) {
  if (n < 4 || !mpz_perfect_power_p(n.get_mpz_t())) return {n, 1};
  const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  BigInt root;
  for (unsigned long k = bits; k >= 2; --k) {
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return {root, k};
  }
  return {n, 1};
}

std::string to_string(const BigInt& v) { return v.get_str(); }
std::string to_string(const Rational& v) { return v.get_str(); }

}  // namespace expcert
