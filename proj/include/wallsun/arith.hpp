#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "wallsun/errors.hpp"

namespace wallsun {

using BigInt = boost::multiprecision::mpz_int;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

struct PrimePower {
  u64 p = 0;
  int e = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

inline bool fits_u64(const BigInt& v) {
  return v >= 0 && boost::multiprecision::msb(v == 0 ? BigInt(1) : v) < 64;
}

inline u64 to_u64(const BigInt& v) {
  if (!fits_u64(v)) throw InvalidArgument("value does not fit in 64 bits: " + v.str());
  return v.convert_to<u64>();
}

inline BigInt to_big(u64 v) { return BigInt(v); }

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

inline std::optional<u64> checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

inline u64 checked_mul_or_throw(u64 a, u64 b, const char* what) {
  auto r = checked_mul(a, b);
  if (!r) throw InvalidArgument(std::string(what) + ": result exceeds 64 bits");
  return *r;
}

inline u64 checked_pow(u64 base, int e) {
  u64 r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul_or_throw(r, base, "prime power");
  return r;
}

inline u64 lcm_or_throw(u64 a, u64 b) {
  return checked_mul_or_throw(a / std::gcd(a, b), b, "lcm");
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
inline std::optional<u64> inverse_mod(u64 a, u64 m) {
  i128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return m == 1 ? std::optional<u64>(0) : std::nullopt;
  i128 v = old_s % static_cast<i128>(m);
  if (v < 0) v += m;
  return static_cast<u64>(v);
}

inline std::optional<BigInt> inverse_mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  BigInt reduced = a % m;
  if (reduced < 0) reduced += m;
  if (mpz_invert(r.backend().data(), reduced.backend().data(), m.backend().data()) == 0) {
    return std::nullopt;
  }
  return r;
}

// Floor square root.
inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Residue arithmetic for a given storage type. The u64 specialization is the
// fast path (products fit in 128 bits); BigInt is the fallback for any m.
template <class Int>
struct ModOps;

template <>
struct ModOps<u64> {
  u64 m;

  explicit ModOps(u64 modulus) : m(modulus) {}

  u64 reduce(u64 a) const { return a % m; }
  u64 reduce_signed(i64 a) const {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
  }
  u64 add(u64 a, u64 b) const {
    u64 r = a + b;
    if (r < a || r >= m) r -= m;
    return r;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (m - b); }
  u64 neg(u64 a) const { return a == 0 ? 0 : m - a; }
  u64 mul(u64 a, u64 b) const {
    if (m <= std::numeric_limits<std::uint32_t>::max()) return a * b % m;
    return static_cast<u64>(static_cast<u128>(a) * b % m);
  }
  std::optional<u64> inverse(u64 a) const { return inverse_mod(a, m); }
  u64 zero() const { return 0; }
  u64 one() const { return 1 % m; }
};

template <>
struct ModOps<BigInt> {
  BigInt m;

  explicit ModOps(BigInt modulus) : m(std::move(modulus)) {}

  BigInt reduce(const BigInt& a) const {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
  }
  BigInt reduce_signed(const BigInt& a) const { return reduce(a); }
  BigInt add(const BigInt& a, const BigInt& b) const {
    BigInt r = a + b;
    if (r >= m) r -= m;
    return r;
  }
  BigInt sub(const BigInt& a, const BigInt& b) const {
    BigInt r = a - b;
    if (r < 0) r += m;
    return r;
  }
  BigInt neg(const BigInt& a) const { return a == 0 ? BigInt(0) : BigInt(m - a); }
  BigInt mul(const BigInt& a, const BigInt& b) const { return BigInt(a * b % m); }
  std::optional<BigInt> inverse(const BigInt& a) const { return inverse_mod(a, m); }
  BigInt zero() const { return 0; }
  BigInt one() const { return m == 1 ? BigInt(0) : BigInt(1); }
};

// Montgomery multiplication for odd m < 2^63. Values live in Montgomery form
// (x * 2^64 mod m) between to_form() and from_form().
class Montgomery64 {
 public:
  explicit Montgomery64(u64 m) : m_(m) {
    if (m % 2 == 0 || m >= (u64{1} << 63)) {
      throw InvalidArgument("Montgomery modulus must be odd and below 2^63");
    }
    u64 inv = m;
    for (int i = 0; i < 6; ++i) inv *= 2 - m * inv;
    neg_inv_ = ~inv + 1;
    u64 r1 = (~m + 1) % m;  // 2^64 mod m
    r2_ = static_cast<u64>(static_cast<u128>(r1) * r1 % m);
  }

  u64 modulus() const { return m_; }

  u64 reduce(u128 t) const {
    u64 q = static_cast<u64>(t) * neg_inv_;
    u64 r = static_cast<u64>((t + static_cast<u128>(q) * m_) >> 64);
    return r >= m_ ? r - m_ : r;
  }
  u64 to_form(u64 a) const { return reduce(static_cast<u128>(a % m_) * r2_); }
  u64 from_form(u64 a) const { return reduce(a); }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const {
    u64 r = a + b;
    return r >= m_ ? r - m_ : r;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (m_ - b); }

 private:
  u64 m_;
  u64 neg_inv_ = 0;
  u64 r2_ = 0;
};

// SplitMix64; used for hashing (p, seed) into deterministic sample decisions.
inline u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace wallsun
