#pragma once

// Integer factorization: trial division, Pollard rho with Brent's cycle
// detection, and Miller-Rabin certificates (deterministic below 2^64).

#include <algorithm>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "wallsun/arith.hpp"

namespace wallsun {

inline constexpr u64 kTrialDivisionLimit = 100'000;
inline constexpr u64 kDefaultRhoBudget = 1ULL << 26;

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kSmall) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
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

// Deterministic below 2^64; `rounds` random bases above.
inline bool is_probable_prime(const BigInt& n, int rounds = 64, u64 seed = 0) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(n.convert_to<u64>());
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  BigInt n_minus_1 = n - 1;
  for (int round = 0; round < rounds; ++round) {
    BigInt a = 2 + BigInt(rng()) % (n - 3);
    BigInt x;
    mpz_powm(x.backend().data(), a.backend().data(), d.backend().data(), n.backend().data());
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

// Brent's variant of Pollard rho; products of |x − y| are batched between
// gcds. Returns a nontrivial factor, n itself on an unlucky cycle, or 0 when
// the iteration budget runs out.
template <class Int, class MulMod, class Gcd>
Int pollard_brent(const Int& n, Int c, Int y, u64& budget, MulMod mulmod_fn, Gcd gcd_fn) {
  constexpr u64 kBatch = 128;
  // v² + c mod n without overflowing when n is close to the word size.
  const Int gap = n - c;
  auto f = [&](const Int& v) {
    Int r = mulmod_fn(v, v);
    return r >= gap ? Int(r - gap) : Int(r + c);
  };
  Int g = 1, q = 1, x = 0, ys = 0;
  u64 r = 1;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      u64 steps = std::min(kBatch, r - k);
      if (steps > budget) return 0;
      budget -= steps;
      for (u64 i = 0; i < steps; ++i) {
        y = f(y);
        Int diff = x > y ? Int(x - y) : Int(y - x);
        q = mulmod_fn(q, diff);
      }
      g = gcd_fn(q, n);
      k += steps;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Int diff = x > ys ? Int(x - ys) : Int(ys - x);
      g = gcd_fn(diff, n);
    } while (g == 1);
  }
  return g;
}

inline u64 rho_u64(u64 n, std::mt19937_64& rng, u64& budget) {
  if (n % 2 == 0) return 2;
  while (budget > 0) {
    u64 c = 1 + rng() % (n - 1);
    u64 y = rng() % n;
    u64 g = pollard_brent<u64>(
        n, c, y, budget, [n](u64 a, u64 b) { return mulmod(a, b, n); },
        [](u64 a, u64 b) { return std::gcd(a, b); });
    if (g == 0) return 0;
    if (g != n) return g;
  }
  return 0;
}

inline BigInt rho_big(const BigInt& n, std::mt19937_64& rng, u64& budget) {
  if ((n & 1) == 0) return 2;
  while (budget > 0) {
    BigInt c = 1 + BigInt(rng()) % (n - 1);
    BigInt y = BigInt(rng()) % n;
    BigInt g = pollard_brent<BigInt>(
        n, c, y, budget, [&n](const BigInt& a, const BigInt& b) { return BigInt(a * b % n); },
        [](const BigInt& a, const BigInt& b) { return BigInt(boost::multiprecision::gcd(a, b)); });
    if (g == 0) return 0;
    if (g != n) return g;
  }
  return 0;
}

}  // namespace detail

// Complete factorization of a 64-bit integer, primes ascending.
inline Factorization factor_u64(u64 n, u64 seed = 0) {
  Factorization out;
  if (n <= 1) return out;
  std::map<u64, int> acc;
  for (u64 p = 2; p * p <= n && p < 1000; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++acc[p];
      n /= p;
    }
  }
  std::vector<u64> stack;
  if (n > 1) stack.push_back(n);
  std::mt19937_64 rng(seed);
  while (!stack.empty()) {
    u64 m = stack.back();
    stack.pop_back();
    if (is_prime_u64(m)) {
      ++acc[m];
      continue;
    }
    u64 budget = ~u64{0};
    u64 d = detail::rho_u64(m, rng, budget);
    stack.push_back(d);
    stack.push_back(m / d);
  }
  for (auto [p, e] : acc) out.push_back({p, e});
  return out;
}

struct FactorMap {
  std::vector<std::pair<BigInt, int>> factors;  // primes ascending
  bool complete = true;
  BigInt cofactor = 1;  // unfactored composite part when incomplete

  BigInt product() const {
    BigInt r = cofactor;
    for (const auto& [p, e] : factors) {
      BigInt pe;
      mpz_pow_ui(pe.backend().data(), p.backend().data(), static_cast<unsigned long>(e));
      r *= pe;
    }
    return r;
  }

  int exponent_of(const BigInt& p) const {
    for (const auto& [q, e] : factors) {
      if (q == p) return e;
    }
    return 0;
  }
};

struct FactorBudget {
  u64 rho_iterations = kDefaultRhoBudget;
  u64 seed = 0;
};

// Trial division to 10^5, then Pollard-Brent. Runs out of budget gracefully:
// the remaining composite is kept in `cofactor` and `complete` is false.
inline FactorMap factorize(BigInt n, FactorBudget budget = {}) {
  if (n < 1) throw InvalidArgument("factorize: N must be positive");
  std::map<BigInt, int> acc;
  FactorMap out;
  for (u64 p = 2; p <= kTrialDivisionLimit && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++acc[BigInt(p)];
      n /= p;
    }
  }
  std::mt19937_64 rng(budget.seed);
  u64 remaining = budget.rho_iterations;
  std::vector<BigInt> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    BigInt m = std::move(stack.back());
    stack.pop_back();
    if (is_probable_prime(m, 64, budget.seed)) {
      ++acc[m];
      continue;
    }
    BigInt d;
    if (fits_u64(m)) {
      d = detail::rho_u64(m.convert_to<u64>(), rng, remaining);
    } else {
      d = detail::rho_big(m, rng, remaining);
    }
    if (d == 0) {
      out.complete = false;
      out.cofactor *= m;
      continue;
    }
    stack.push_back(d);
    stack.push_back(m / d);
  }
  for (auto& [p, e] : acc) out.factors.emplace_back(p, e);
  return out;
}

// All divisors in ascending order.
inline std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& [p, e] : f) {
    std::size_t base = out.size();
    u64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Factorization merge(Factorization a, const Factorization& b) {
  for (const auto& pp : b) {
    auto it = std::find_if(a.begin(), a.end(), [&](const PrimePower& q) { return q.p == pp.p; });
    if (it == a.end()) {
      a.push_back(pp);
    } else {
      it->e += pp.e;
    }
  }
  std::sort(a.begin(), a.end(), [](const PrimePower& x, const PrimePower& y) { return x.p < y.p; });
  return a;
}

inline u64 evaluate(const Factorization& f) {
  u64 r = 1;
  for (const auto& [p, e] : f) r = checked_mul_or_throw(r, checked_pow(p, e), "factorization value");
  return r;
}

}  // namespace wallsun
