#pragma once

#include <optional>
#include <utility>

#include "wallsun/arith.hpp"
#include "wallsun/golden_ring.hpp"

namespace wallsun {

inline constexpr u64 kDefaultFibCap = 1'000'000;

// (F_n, F_{n+1}), optionally reduced modulo `modulus`.
template <class Value>
struct FibPair {
  u64 n = 0;
  Value f_n{};
  Value f_n1{};
  std::optional<Value> modulus;

  FibPair next() const {
    Value s = f_n + f_n1;
    if (modulus && s >= *modulus) s -= *modulus;
    return {n + 1, f_n1, s, modulus};
  }

  bool is_identity() const { return f_n == 0 && f_n1 == (modulus && *modulus == 1 ? 0 : 1); }
};

// Fast doubling over any ModOps-like arithmetic:
//   F_{2k}   = F_k (2F_{k+1} − F_k)
//   F_{2k+1} = F_k² + F_{k+1}²
template <class Ops, class Value>
std::pair<Value, Value> fib_doubling(u64 n, const Ops& ops, Value zero, Value one) {
  Value a = zero;  // F_k
  Value b = one;   // F_{k+1}
  if (n == 0) return {a, b};
  for (int i = 63 - __builtin_clzll(n); i >= 0; --i) {
    Value twice_b = ops.add(b, b);
    Value c = ops.mul(a, ops.sub(twice_b, a));
    Value d = ops.add(ops.mul(a, a), ops.mul(b, b));
    if ((n >> i) & 1) {
      a = d;
      b = ops.add(c, d);
    } else {
      a = c;
      b = d;
    }
  }
  return {a, b};
}

namespace detail {

struct ExactOps {
  BigInt add(const BigInt& a, const BigInt& b) const { return a + b; }
  BigInt sub(const BigInt& a, const BigInt& b) const { return a - b; }
  BigInt mul(const BigInt& a, const BigInt& b) const { return a * b; }
};

}  // namespace detail

inline FibPair<BigInt> fib_pair_exact(u64 n, u64 cap = kDefaultFibCap) {
  if (n > cap) {
    throw CapExceeded("fib_exact: index " + std::to_string(n) + " above cap " + std::to_string(cap));
  }
  auto [f, g] = fib_doubling(n, detail::ExactOps{}, BigInt(0), BigInt(1));
  return {n, std::move(f), std::move(g), std::nullopt};
}

inline BigInt fib_exact(u64 n, u64 cap = kDefaultFibCap) { return fib_pair_exact(n, cap).f_n; }

// (F_n mod m, F_{n+1} mod m); Int is u64 (fast path) or BigInt.
template <class Int>
FibPair<Int> fib_pair_mod(u64 n, const Int& m) {
  if (m < 2) throw InvalidArgument("modulus must be at least 2");
  ModOps<Int> ops(m);
  auto [f, g] = fib_doubling(n, ops, ops.zero(), ops.one());
  return {n, std::move(f), std::move(g), m};
}

// Montgomery variant for odd m < 2^63; this is the scanner's inner loop.
inline FibPair<u64> fib_pair_mod_montgomery(u64 n, const Montgomery64& mont) {
  u64 m = mont.modulus();
  auto [f, g] = fib_doubling(n, mont, u64{0}, mont.to_form(1));
  return {n, mont.from_form(f), mont.from_form(g), m};
}

// Dispatches on the modulus width; results are always BigInt.
inline FibPair<BigInt> fib_pair_mod(u64 n, const Modulus& m) {
  if (m.fast()) {
    auto r = fib_pair_mod<u64>(n, m.small());
    return {n, BigInt(r.f_n), BigInt(r.f_n1), m.value()};
  }
  return fib_pair_mod<BigInt>(n, m.value());
}

// Fastest available u64 route.
inline FibPair<u64> fib_pair_mod_u64(u64 n, u64 m) {
  if ((m & 1) != 0 && m > 1 && m < (u64{1} << 63)) return fib_pair_mod_montgomery(n, Montgomery64(m));
  return fib_pair_mod<u64>(n, m);
}

// Legendre symbol (p/5): +1 for p ≡ ±1 mod 5, −1 for p ≡ ±2 mod 5.
// p = 2 follows the same rule (2 ≡ 2 mod 5, so −1); p = 5 is undefined.
inline int legendre5(u64 p) {
  switch (p % 5) {
    case 1:
    case 4: return 1;
    case 2:
    case 3: return -1;
    default: throw InvalidArgument("legendre5 undefined for p divisible by 5");
  }
}

}  // namespace wallsun
