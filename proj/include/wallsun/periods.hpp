#pragma once

// Pisano periods π(m) and ranks of apparition l(m).
//
// π(m) is assembled from prime powers as an lcm. The often-quoted product
// form ∏ π(p_i^{e_i}) is wrong whenever two factor periods share a divisor
// (m = 12: lcm(6, 8) = 24, product 48); PisanoProfile keeps the product
// alongside so the difference stays visible.

#include <optional>
#include <vector>

#include "wallsun/arith.hpp"
#include "wallsun/factor.hpp"
#include "wallsun/fibonacci.hpp"
#include "wallsun/golden_ring.hpp"

namespace wallsun {

// Moduli up to this size for p ∈ {2, 5} are handled by direct cycle search.
inline constexpr u64 kDirectCycleLimit = u64{1} << 20;

struct PrimePowerPeriod {
  u64 p = 0;
  int e = 0;
  u64 pi = 0;
  u64 rank = 0;
  int lift_exponent = 0;  // largest e₀ with π(p^{e₀}) = π(p)
};

struct PisanoProfile {
  u64 m = 0;
  u64 pi = 0;
  u64 rank = 0;
  std::vector<PrimePowerPeriod> factors;
  std::optional<u64> factor_period_product;  // ∏ π(p^e); empty on overflow
};

struct MainLemmaRecord {
  u64 p = 0;
  u64 rank = 0;
  bool squarefree_at_rank = false;  // p ‖ F_{l(p)}
  u64 pi_p = 0;
  u64 pi_p2 = 0;
  bool conclusion_holds = false;
};

// Period by walking the sequence until (0, 1) recurs. O(π(m)).
inline u64 pisano_by_cycle(u64 m) {
  if (m < 2) throw InvalidArgument("pisano: modulus must be at least 2");
  u64 a = 0, b = 1, n = 0;
  do {
    u64 c = a + b;
    if (c >= m) c -= m;
    a = b;
    b = c;
    ++n;
  } while (a != 0 || b != 1);
  return n;
}

// p − 1 when p ≡ ±1 mod 10, otherwise 2(p + 1).
inline u64 wall_bound(u64 p) {
  u64 r = p % 10;
  return (r == 1 || r == 9) ? p - 1 : 2 * (p + 1);
}

inline Factorization wall_bound_factorization(u64 p) {
  u64 r = p % 10;
  if (r == 1 || r == 9) return factor_u64(p - 1);
  return merge(factor_u64(p + 1), {{2, 1}});
}

inline bool is_fib_identity(const FibPair<u64>& f) { return f.f_n == 0 && f.f_n1 == 1; }

// π(p) for prime p. Divisors of the bound are tried in ascending order, so the
// first hit is the least period.
inline u64 pisano_prime(u64 p) {
  if (!is_prime_u64(p)) throw InvalidArgument("pisano_prime: " + std::to_string(p) + " is not prime");
  if (p == 2 || p == 5) return pisano_by_cycle(p);
  for (u64 d : divisors(wall_bound_factorization(p))) {
    if (is_fib_identity(fib_pair_mod_u64(d, p))) return d;
  }
  throw SanityViolation("pisano_prime: no divisor of the Wall bound is a period mod " + std::to_string(p));
}

// Largest e₀ ≥ 1 with π(p^{e₀}) = π(p), found by testing π(p) against p^{j+1}.
inline int lift_exponent(u64 p, u64 pi_p) {
  int j = 1;
  BigInt pj1 = BigInt(p) * p;
  while (j < 256) {
    auto f = fib_pair_mod(pi_p, Modulus(pj1));
    if (f.f_n != 0 || f.f_n1 != 1) break;
    ++j;
    pj1 *= p;
  }
  return j;
}

// Least d | multiple with F_d ≡ 0 mod m. Requires F_multiple ≡ 0 mod m.
inline u64 least_zero_divisor(u64 multiple, u64 m) {
  for (u64 d : divisors(factor_u64(multiple))) {
    if (d == 0) continue;
    if (fib_pair_mod_u64(d, m).f_n == 0) return d;
  }
  throw SanityViolation("no divisor of " + std::to_string(multiple) + " is a zero of F mod " + std::to_string(m));
}

inline PrimePowerPeriod prime_power_period(u64 p, int e) {
  if (e < 1) throw InvalidArgument("prime power exponent must be positive");
  PrimePowerPeriod out{p, e, 0, 0, 0};
  u64 pi_p = pisano_prime(p);
  out.lift_exponent = lift_exponent(p, pi_p);
  u64 pe = checked_pow(p, e);
  if ((p == 2 || p == 5) && pe <= kDirectCycleLimit) {
    out.pi = pisano_by_cycle(pe);
  } else if (e <= out.lift_exponent) {
    out.pi = pi_p;
  } else {
    out.pi = checked_mul_or_throw(checked_pow(p, e - out.lift_exponent), pi_p, "pisano period");
  }
  out.rank = least_zero_divisor(out.pi, pe);
  return out;
}

inline u64 pisano_prime_power(u64 p, int e) { return prime_power_period(p, e).pi; }

inline PisanoProfile pisano(u64 m) {
  if (m < 2) throw InvalidArgument("pisano: modulus must be at least 2 (period of m = 1 is undefined)");
  PisanoProfile prof;
  prof.m = m;
  prof.pi = 1;
  prof.rank = 1;
  std::optional<u64> product = 1;
  for (const auto& [p, e] : factor_u64(m)) {
    PrimePowerPeriod f = prime_power_period(p, e);
    prof.pi = lcm_or_throw(prof.pi, f.pi);
    prof.rank = lcm_or_throw(prof.rank, f.rank);
    if (product) product = checked_mul(*product, f.pi);
    prof.factors.push_back(f);
  }
  prof.factor_period_product = product;
  return prof;
}

// l(m): lcm of the prime-power ranks, since p^e | F_n for every p^e ‖ m iff
// m | F_n.
inline u64 rank_of_apparition(u64 m) {
  if (m < 2) throw InvalidArgument("rank: modulus must be at least 2");
  u64 r = 1;
  for (const auto& [p, e] : factor_u64(m)) r = lcm_or_throw(r, prime_power_period(p, e).rank);
  return r;
}

// π(m) by order reduction from a known multiple of the period: start at the
// multiple and strip prime factors while (F_n, F_{n+1}) stays (0, 1) mod m.
// Uses no divisibility theory beyond "the zeros of the pair form a subgroup".
inline u64 period_by_order_reduction(u64 m, const Factorization& multiple) {
  u64 n = evaluate(multiple);
  if (!is_fib_identity(fib_pair_mod_u64(n, m))) {
    throw SanityViolation(std::to_string(n) + " is not a multiple of the period mod " + std::to_string(m));
  }
  for (const auto& [q, e] : multiple) {
    for (int i = 0; i < e && is_fib_identity(fib_pair_mod_u64(n / q, m)); ++i) n /= q;
  }
  return n;
}

// A multiple of π(p^e): p^{e−1}(p² − 1) kills every unit of Z[α]/p^e for
// p ∉ {2, 5}; 3·2^e and 4·5^e cover the two exceptional primes.
inline Factorization period_multiple(u64 p, int e) {
  if (p == 2) return {{2, e}, {3, 1}};
  if (p == 5) return {{2, 2}, {5, e}};
  Factorization f = merge(factor_u64(p - 1), factor_u64(p + 1));
  return merge(f, e > 1 ? Factorization{{p, e - 1}} : Factorization{});
}

inline MainLemmaRecord check_main_lemma(u64 p) {
  if (p == 2 || p == 5) throw InvalidArgument("main lemma applies to p ∉ {2, 5}");
  MainLemmaRecord rec;
  rec.p = p;
  PrimePowerPeriod one = prime_power_period(p, 1);
  rec.rank = one.rank;
  rec.pi_p = one.pi;
  rec.pi_p2 = prime_power_period(p, 2).pi;
  u64 p2 = checked_mul_or_throw(p, p, "p^2");
  rec.squarefree_at_rank = fib_pair_mod_u64(rec.rank, p2).f_n != 0;
  rec.conclusion_holds = !rec.squarefree_at_rank || (rec.pi_p2 == p * rec.pi_p && rec.pi_p2 != rec.pi_p);
  return rec;
}

}  // namespace wallsun
