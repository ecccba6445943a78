#pragma once

// Fibonacci-Wieferich (Wall-Sun-Sun) tests. A prime p ∉ {2, 5} is FW iff
//   p² | F_{p−ε}, ε = (p/5)                      (k-value criterion)
//   α^{p²−1} ≡ 1 mod p² in Z[α]                  (α criterion)
// Writing α^{p²−1} = 1 + (a + bα)p, the unit norm forces 2a + b ≡ 0 mod p.

#include <string>

#include "wallsun/arith.hpp"
#include "wallsun/factor.hpp"
#include "wallsun/fibonacci.hpp"
#include "wallsun/golden_ring.hpp"

namespace wallsun {

inline constexpr u64 kDefaultNearMissThreshold = 100;

struct KValue {
  int epsilon = 0;
  i64 k = 0;  // signed representative in (−p/2, p/2]
};

struct AlphaCriterion {
  bool is_fw = false;
  u64 a = 0;
  u64 b = 0;
};

struct FwRecord {
  u64 p = 0;
  int epsilon = 0;
  i64 k = 0;
  u64 a = 0;
  u64 b = 0;
  bool is_fw = false;
  bool is_near_miss = false;

  friend bool operator==(const FwRecord&, const FwRecord&) = default;
};

inline void require_fw_domain(u64 p) {
  if (p == 2 || p == 5 || p < 2) throw InvalidArgument("FW tests need a prime p ∉ {2, 5}");
}

inline i64 signed_residue(u64 r, u64 p) {
  return r > p / 2 ? static_cast<i64>(r) - static_cast<i64>(p) : static_cast<i64>(r);
}

inline constexpr u64 kFastFwLimit = u64{1} << 31;  // p² < 2^62 keeps Montgomery valid

// k with F_{p−ε} ≡ k·p mod p². The caller guarantees primality.
inline KValue fw_k_value(u64 p) {
  require_fw_domain(p);
  KValue out;
  out.epsilon = legendre5(p);
  u64 index = out.epsilon == 1 ? p - 1 : p + 1;
  u64 k0 = 0;
  if (p < kFastFwLimit) {
    u64 p2 = p * p;
    u64 r = fib_pair_mod_u64(index, p2).f_n;
    if (r % p != 0) {
      throw SanityViolation("F_{p-eps} not divisible by p for p = " + std::to_string(p));
    }
    k0 = r / p;
  } else {
    BigInt bp(p);
    BigInt r = fib_pair_mod(index, Modulus(BigInt(bp * bp))).f_n;
    if (r % bp != 0) {
      throw SanityViolation("F_{p-eps} not divisible by p for p = " + std::to_string(p));
    }
    k0 = to_u64(BigInt(r / bp));
  }
  out.k = signed_residue(k0, p);
  return out;
}

inline AlphaCriterion alpha_criterion(u64 p) {
  require_fw_domain(p);
  BigInt x, y;
  if (p < (u64{1} << 32)) {
    u64 p2 = p * p;
    auto r = residue_pow(FastResidue::alpha(p2), p2 - 1);
    x = r.x();
    y = r.y();
  } else {
    BigInt p2 = BigInt(p) * p;
    auto r = residue_pow(BigResidue::alpha(p2), BigInt(p2 - 1));
    x = r.x();
    y = r.y();
  }
  if (x % p != 1 % p || y % p != 0) {
    throw SanityViolation("alpha^(p^2-1) is not 1 mod p for p = " + std::to_string(p));
  }
  AlphaCriterion out;
  out.a = to_u64(BigInt((x - 1) / p));
  out.b = to_u64(BigInt(y / p));
  out.is_fw = out.a == 0 && out.b == 0;
  return out;
}

inline bool norm_constraint_holds(const AlphaCriterion& c, u64 p) {
  return (2 * static_cast<u128>(c.a) + c.b) % p == 0;
}

inline bool norm_constraint_check(u64 p) { return norm_constraint_holds(alpha_criterion(p), p); }

inline FwRecord make_record(u64 p, const KValue& kv, const AlphaCriterion& ac, u64 threshold) {
  FwRecord r;
  r.p = p;
  r.epsilon = kv.epsilon;
  r.k = kv.k;
  r.a = ac.a;
  r.b = ac.b;
  r.is_fw = kv.k == 0;
  u64 abs_k = kv.k < 0 ? static_cast<u64>(-kv.k) : static_cast<u64>(kv.k);
  r.is_near_miss = abs_k <= threshold;
  return r;
}

// Both criteria, cross-checked. Disagreement is a SanityViolation.
inline FwRecord fw_test(u64 p, u64 threshold = kDefaultNearMissThreshold) {
  KValue kv = fw_k_value(p);
  AlphaCriterion ac = alpha_criterion(p);
  if ((kv.k == 0) != ac.is_fw) {
    throw SanityViolation("FW criteria disagree at p = " + std::to_string(p));
  }
  return make_record(p, kv, ac, threshold);
}

inline const char* fw_csv_header() { return "p,epsilon,k,a,b,is_fw,is_near_miss"; }

inline std::string to_csv(const FwRecord& r) {
  return std::to_string(r.p) + ',' + std::to_string(r.epsilon) + ',' + std::to_string(r.k) + ',' +
         std::to_string(r.a) + ',' + std::to_string(r.b) + ',' + (r.is_fw ? '1' : '0') + ',' +
         (r.is_near_miss ? '1' : '0');
}

}  // namespace wallsun
