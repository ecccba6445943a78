#pragma once

// Slow, obviously-correct reference computations. Nothing here calls into the
// library; the tests compare library results against these.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using Big = boost::multiprecision::mpz_int;

inline std::vector<bool> sieve(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  composite[0] = true;
  if (limit >= 1) composite[1] = true;
  for (u64 i = 2; i * i <= limit; ++i) {
    if (composite[i]) continue;
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  std::vector<bool> prime(limit + 1);
  for (u64 i = 0; i <= limit; ++i) prime[i] = !composite[i];
  return prime;
}

inline std::vector<u64> primes(u64 lo, u64 hi) {
  auto is_p = sieve(hi);
  std::vector<u64> out;
  for (u64 i = lo; i <= hi; ++i) {
    if (is_p[i]) out.push_back(i);
  }
  return out;
}

inline bool trial_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Period of (F_n mod m) by walking until the pair (0, 1) comes back.
inline u64 pisano(u64 m) {
  u64 a = 0, b = 1 % m;
  for (u64 n = 1;; ++n) {
    u64 c = (a + b) % m;
    a = b;
    b = c;
    if (a == 0 && b == 1 % m) return n;
  }
}

inline u64 rank(u64 m) {
  u64 a = 0, b = 1 % m;
  for (u64 n = 1;; ++n) {
    u64 c = (a + b) % m;
    a = b;
    b = c;
    if (a == 0) return n;
  }
}

inline u64 fib_mod(u64 n, u64 m) {
  u64 a = 0, b = 1 % m;
  for (u64 i = 0; i < n; ++i) {
    u64 c = static_cast<u64>((static_cast<u128>(a) + b) % m);
    a = b;
    b = c;
  }
  return a;
}

inline Big fib(u64 n) {
  Big a = 0, b = 1;
  for (u64 i = 0; i < n; ++i) {
    Big c = a + b;
    a = b;
    b = c;
  }
  return a;
}

// Legendre symbol (p/5) from the residue of p mod 5.
inline int legendre5(u64 p) {
  u64 r = p % 5;
  return (r == 1 || r == 4) ? 1 : -1;
}

// k with F_{p−(p/5)} ≡ k·p (mod p²), signed representative in (−p/2, p/2].
inline i64 k_value(u64 p) {
  u64 n = legendre5(p) == 1 ? p - 1 : p + 1;
  u64 f = fib_mod(n, p * p);
  u64 k = f / p;
  i64 s = static_cast<i64>(k);
  if (2 * k > p) s -= static_cast<i64>(p);
  return s;
}

// Pair (x, y) for x + yα modulo m, multiplied by schoolbook α² = α + 1.
struct Residue {
  u64 x, y, m;
};

inline Residue mul(const Residue& a, const Residue& b) {
  u128 m = a.m;
  u128 ac = static_cast<u128>(a.x) * b.x % m;
  u128 bd = static_cast<u128>(a.y) * b.y % m;
  u128 ad = static_cast<u128>(a.x) * b.y % m;
  u128 bc = static_cast<u128>(a.y) * b.x % m;
  return {static_cast<u64>((ac + bd) % m), static_cast<u64>((ad + bc + bd) % m), a.m};
}

inline Residue pow(Residue g, u64 k) {
  Residue r{1 % g.m, 0, g.m};
  for (u64 i = 0; i < k; ++i) r = mul(r, g);
  return r;
}

// Order by repeated multiplication. Caller guarantees g is a unit.
inline u64 order(const Residue& g) {
  Residue r = g;
  for (u64 n = 1;; ++n) {
    if (r.x == 1 % g.m && r.y == 0) return n;
    r = mul(r, g);
  }
}

// Inverse by exhaustive search; fine for the small moduli used in tests.
inline Residue inverse(const Residue& g) {
  for (u64 x = 0; x < g.m; ++x) {
    for (u64 y = 0; y < g.m; ++y) {
      Residue c = mul(g, {x, y, g.m});
      if (c.x == 1 % g.m && c.y == 0) return {x, y, g.m};
    }
  }
  return {0, 0, 0};
}

// g⁻¹ = g^(order − 1).
inline Residue inverse_by_power(const Residue& g) { return pow(g, order(g) - 1); }

// Distinct prime divisors by trial division.
inline std::vector<Big> prime_divisors(Big n) {
  std::vector<Big> out;
  for (Big d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::vector<std::pair<Big, int>> factor(Big n) {
  std::vector<std::pair<Big, int>> out;
  for (Big d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace oracle
