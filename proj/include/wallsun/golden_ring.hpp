#pragma once

// Arithmetic in the golden ring Z[α], α = (1+√5)/2, and in its quotients
// Z[α]/mZ[α]. Elements are written x + yα in the basis {1, α}; α² = α + 1,
// ᾱ = 1 − α, αᾱ = −1, √5 = 2α − 1.

#include <array>
#include <cmath>
#include <compare>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wallsun/arith.hpp"

namespace wallsun {

class GoldenInt {
 public:
  GoldenInt() = default;
  GoldenInt(BigInt x, BigInt y) : x_(std::move(x)), y_(std::move(y)) {}
  GoldenInt(long long x) : x_(x), y_(0) {}  // NOLINT: rational integers embed implicitly

  static GoldenInt one() { return {1, 0}; }
  static GoldenInt alpha() { return {0, 1}; }
  static GoldenInt alpha_bar() { return {1, -1}; }
  static GoldenInt sqrt5() { return {-1, 2}; }
  static GoldenInt rational(BigInt v) { return {std::move(v), 0}; }

  const BigInt& x() const { return x_; }
  const BigInt& y() const { return y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }

  GoldenInt operator-() const { return {-x_, -y_}; }

  GoldenInt& operator+=(const GoldenInt& o) {
    x_ += o.x_;
    y_ += o.y_;
    return *this;
  }
  GoldenInt& operator-=(const GoldenInt& o) {
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
  }
  GoldenInt& operator*=(const GoldenInt& o) {
    // (a+bα)(c+dα) = (ac+bd) + (ad+bc+bd)α
    BigInt ac = x_ * o.x_;
    BigInt bd = y_ * o.y_;
    BigInt cross = (x_ + y_) * (o.x_ + o.y_) - ac;
    x_ = ac + bd;
    y_ = std::move(cross);
    return *this;
  }

  friend GoldenInt operator+(GoldenInt a, const GoldenInt& b) { return a += b; }
  friend GoldenInt operator-(GoldenInt a, const GoldenInt& b) { return a -= b; }
  friend GoldenInt operator*(GoldenInt a, const GoldenInt& b) { return a *= b; }
  friend bool operator==(const GoldenInt& a, const GoldenInt& b) {
    return a.x_ == b.x_ && a.y_ == b.y_;
  }

  GoldenInt pow(u64 k) const {
    GoldenInt result = one();
    GoldenInt base = *this;
    while (k != 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k != 0) base *= base;
    }
    return result;
  }

  std::string str() const {
    std::string s = x_.str();
    s += y_ < 0 ? " - " : " + ";
    s += BigInt(boost::multiprecision::abs(y_)).str();
    s += "α";
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const GoldenInt& g) { return os << g.str(); }

 private:
  BigInt x_ = 0;
  BigInt y_ = 0;
};

inline GoldenInt conjugate(const GoldenInt& g) { return {g.x() + g.y(), -g.y()}; }

inline BigInt norm(const GoldenInt& g) {
  return g.x() * g.x() + g.x() * g.y() - g.y() * g.y();
}

// Sign of g under the real embedding α ↦ (1+√5)/2, decided exactly.
// g = (s + t√5)/2 with s = 2x + y, t = y.
inline int real_sign(const GoldenInt& g) {
  BigInt s = 2 * g.x() + g.y();
  const BigInt& t = g.y();
  int ss = s.sign();
  int ts = t.sign();
  if (ss >= 0 && ts >= 0) return (ss | ts) != 0 ? 1 : 0;
  if (ss <= 0 && ts <= 0) return -1;
  BigInt diff = s * s - 5 * t * t;
  return ss > 0 ? diff.sign() : -diff.sign();
}

inline int conjugate_sign(const GoldenInt& g) { return real_sign(conjugate(g)); }

// |g| in the real embedding, returned as ±g.
inline GoldenInt real_abs(const GoldenInt& g) { return real_sign(g) < 0 ? -g : g; }

// Exact three-way comparison of the real embeddings of a and b.
inline std::strong_ordering real_compare(const GoldenInt& a, const GoldenInt& b) {
  return real_sign(a - b) <=> 0;
}

// Real embedding value at the precision of Float. Uses the conjugate form when
// s and t have opposite signs so the subtraction never cancels.
template <class Float>
Float real_value(const GoldenInt& g) {
  BigInt s = 2 * g.x() + g.y();
  const BigInt& t = g.y();
  using std::sqrt;
  const Float root5 = sqrt(Float(5));
  if (s.sign() * t.sign() >= 0) return (Float(s) + Float(t) * root5) / 2;
  BigInt n = s * s - 5 * t * t;  // (s + t√5)(s − t√5)
  return Float(n) / (2 * (Float(s) - Float(t) * root5));
}

// Division with rounding to the nearest lattice point; the remainder has
// |N(r)| ≤ 5/16 |N(b)|, so the Euclidean algorithm below terminates.
inline std::pair<GoldenInt, GoldenInt> divmod(const GoldenInt& a, const GoldenInt& b) {
  if (b.is_zero()) throw InvalidArgument("division by zero in Z[α]");
  GoldenInt num = a * conjugate(b);
  BigInt den = norm(b);
  auto round_div = [&](const BigInt& u) {
    BigInt n2 = 2 * u + den;
    BigInt d2 = 2 * den;
    if (d2 < 0) {
      n2 = -n2;
      d2 = -d2;
    }
    BigInt q;
    mpz_fdiv_q(q.backend().data(), n2.backend().data(), d2.backend().data());
    return q;
  };
  GoldenInt q{round_div(num.x()), round_div(num.y())};
  return {q, a - q * b};
}

inline bool divides(const GoldenInt& d, const GoldenInt& a) {
  if (d.is_zero()) return a.is_zero();
  GoldenInt num = a * conjugate(d);
  BigInt n = norm(d);
  return num.x() % n == 0 && num.y() % n == 0;
}

inline GoldenInt gcd(GoldenInt a, GoldenInt b) {
  while (!b.is_zero()) {
    GoldenInt r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline bool is_unit(const GoldenInt& g) {
  BigInt n = norm(g);
  return n == 1 || n == -1;
}

inline bool is_associate(const GoldenInt& a, const GoldenInt& b) {
  return divides(a, b) && divides(b, a);
}

enum class Splitting { Split, Inert, Ramified };

inline const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

// Decomposition of a rational prime p in Z[α]. 2 ≡ 2 mod 5 is inert.
inline Splitting splitting_type(u64 p) {
  if (p == 5) return Splitting::Ramified;
  u64 r = p % 5;
  return (r == 1 || r == 4) ? Splitting::Split : Splitting::Inert;
}

namespace detail {

// Square root of a modulo an odd prime p (Tonelli-Shanks); a must be a QR.
inline BigInt sqrt_mod_prime(const BigInt& a, const BigInt& p) {
  auto powm = [&](const BigInt& b, const BigInt& e) {
    BigInt r;
    mpz_powm(r.backend().data(), b.backend().data(), e.backend().data(), p.backend().data());
    return r;
  };
  BigInt n = a % p;
  if (n < 0) n += p;
  if (n == 0) return 0;
  BigInt q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  BigInt z = 2;
  while (powm(z, (p - 1) / 2) != p - 1) ++z;
  BigInt c = powm(z, q);
  BigInt r = powm(n, (q + 1) / 2);
  BigInt t = powm(n, q);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    BigInt tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    BigInt b = c;
    for (unsigned j = 0; j + 1 < m - i; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

}  // namespace detail

// Prime elements of Z[α] lying above the rational prime p, one per prime
// ideal: {q, q̄} for split p, {p} for inert p, {√5} for p = 5.
inline std::vector<GoldenInt> prime_elements_above(const BigInt& p) {
  if (p == 5) return {GoldenInt::sqrt5()};
  if (p == 2) return {GoldenInt::rational(2)};
  BigInt r5 = p % 5;
  if (r5 == 2 || r5 == 3) return {GoldenInt::rational(p)};
  // α ≡ (1 + √5)/2 is a root of t² − t − 1 mod p.
  BigInt s = detail::sqrt_mod_prime(5, p);
  BigInt inv2 = (p + 1) / 2;
  BigInt root = (1 + s) * inv2 % p;
  GoldenInt q = gcd(GoldenInt::rational(p), GoldenInt{-root, 1});
  return {q, conjugate(q)};
}

// Element of Z[α]/mZ[α] with canonical coordinates in [0, m).
template <class Int>
class GoldenResidue {
 public:
  GoldenResidue(Int x, Int y, Int m) : ops_(std::move(m)) {
    if (ops_.m < 2) throw InvalidArgument("modulus must be at least 2");
    x_ = ops_.reduce(x);
    y_ = ops_.reduce(y);
  }

  static GoldenResidue one(Int m) { return GoldenResidue(Int(1), Int(0), std::move(m)); }
  static GoldenResidue alpha(Int m) { return GoldenResidue(Int(0), Int(1), std::move(m)); }
  static GoldenResidue alpha_bar(Int m) {
    GoldenResidue r = one(std::move(m));
    r.y_ = r.ops_.neg(r.ops_.one());
    return r;
  }

  static GoldenResidue from(const GoldenInt& g, const Int& m) {
    BigInt bm(m);
    BigInt x = g.x() % bm;
    BigInt y = g.y() % bm;
    if (x < 0) x += bm;
    if (y < 0) y += bm;
    if constexpr (std::is_same_v<Int, BigInt>) {
      return GoldenResidue(x, y, m);
    } else {
      return GoldenResidue(x.template convert_to<Int>(), y.template convert_to<Int>(), m);
    }
  }

  const Int& x() const { return x_; }
  const Int& y() const { return y_; }
  const Int& modulus() const { return ops_.m; }
  const ModOps<Int>& ops() const { return ops_; }

  GoldenInt lift() const { return {BigInt(x_), BigInt(y_)}; }

  bool is_one() const { return x_ == ops_.one() && y_ == 0; }

  GoldenResidue operator-() const { return make(ops_.neg(x_), ops_.neg(y_)); }

  friend GoldenResidue operator+(const GoldenResidue& a, const GoldenResidue& b) {
    return a.make(a.ops_.add(a.x_, b.x_), a.ops_.add(a.y_, b.y_));
  }
  friend GoldenResidue operator-(const GoldenResidue& a, const GoldenResidue& b) {
    return a.make(a.ops_.sub(a.x_, b.x_), a.ops_.sub(a.y_, b.y_));
  }
  friend GoldenResidue operator*(const GoldenResidue& a, const GoldenResidue& b) {
    const auto& o = a.ops_;
    Int ac = o.mul(a.x_, b.x_);
    Int bd = o.mul(a.y_, b.y_);
    Int cross = o.sub(o.mul(o.add(a.x_, a.y_), o.add(b.x_, b.y_)), ac);
    return a.make(o.add(ac, bd), std::move(cross));
  }
  friend bool operator==(const GoldenResidue& a, const GoldenResidue& b) {
    return a.ops_.m == b.ops_.m && a.x_ == b.x_ && a.y_ == b.y_;
  }

  GoldenResidue conjugate() const { return make(ops_.add(x_, y_), ops_.neg(y_)); }

  Int norm() const {
    const auto& o = ops_;
    return o.sub(o.add(o.mul(x_, x_), o.mul(x_, y_)), o.mul(y_, y_));
  }

 private:
  GoldenResidue(Int x, Int y, ModOps<Int> ops, int) : x_(std::move(x)), y_(std::move(y)), ops_(std::move(ops)) {}
  GoldenResidue make(Int x, Int y) const { return GoldenResidue(std::move(x), std::move(y), ops_, 0); }

  Int x_{};
  Int y_{};
  ModOps<Int> ops_;
};

using FastResidue = GoldenResidue<u64>;
using BigResidue = GoldenResidue<BigInt>;

// Square-and-multiply; exponent is u64 or BigInt. g^0 = 1.
template <class Int, class Exp>
GoldenResidue<Int> residue_pow(const GoldenResidue<Int>& g, const Exp& k) {
  GoldenResidue<Int> result = GoldenResidue<Int>::one(g.modulus());
  if constexpr (std::is_same_v<Exp, BigInt>) {
    if (k < 0) throw InvalidArgument("negative exponent");
    if (k == 0) return result;
    for (long long i = static_cast<long long>(boost::multiprecision::msb(k)); i >= 0; --i) {
      result = result * result;
      if (boost::multiprecision::bit_test(k, static_cast<unsigned>(i))) result = result * g;
    }
  } else {
    static_assert(std::is_unsigned_v<Exp>, "exponent must be unsigned or BigInt");
    if (k == 0) return result;
    for (int i = 63 - __builtin_clzll(static_cast<u64>(k)); i >= 0; --i) {
      result = result * result;
      if ((static_cast<u64>(k) >> i) & 1) result = result * g;
    }
  }
  return result;
}

// g⁻¹ = ḡ · N(g)⁻¹.
template <class Int>
GoldenResidue<Int> residue_inverse(const GoldenResidue<Int>& g) {
  auto inv = g.ops().inverse(g.norm());
  if (!inv) {
    throw NotInvertible("element " + g.lift().str() + " is a zero divisor modulo " +
                        BigInt(g.modulus()).str());
  }
  GoldenResidue<Int> c = g.conjugate();
  return GoldenResidue<Int>(c.ops().mul(c.x(), *inv), c.ops().mul(c.y(), *inv), g.modulus());
}

// Exact order of g given a factored exponent E with g^E = 1.
template <class Int>
u64 multiplicative_order(const GoldenResidue<Int>& g, std::span<const PrimePower> bound) {
  u64 order = 1;
  for (const auto& [p, e] : bound) order = checked_mul_or_throw(order, checked_pow(p, e), "order bound");
  if (!residue_pow(g, order).is_one()) {
    throw OrderNotDividing("g^E != 1 for E = " + std::to_string(order));
  }
  for (const auto& [p, e] : bound) {
    for (int i = 0; i < e; ++i) {
      if (!residue_pow(g, order / p).is_one()) break;
      order /= p;
    }
  }
  return order;
}

// A modulus together with the choice of arithmetic path.
class Modulus {
 public:
  explicit Modulus(BigInt m) : m_(std::move(m)) {
    if (m_ < 2) throw InvalidArgument("modulus must be at least 2");
    fast_ = fits_u64(m_);
  }
  explicit Modulus(u64 m) : Modulus(BigInt(m)) {}

  const BigInt& value() const { return m_; }
  // True iff m² fits in 128 bits, i.e. the u64 residue path applies.
  bool fast() const { return fast_; }
  u64 small() const { return m_.convert_to<u64>(); }

 private:
  BigInt m_;
  bool fast_ = false;
};

// g^k mod m on whichever path the modulus allows; the result is lifted to
// canonical coordinates in [0, m).
inline GoldenInt power_mod(const GoldenInt& g, const BigInt& k, const Modulus& m, bool force_big = false) {
  if (m.fast() && !force_big) {
    return residue_pow(FastResidue::from(g, m.small()), k).lift();
  }
  return residue_pow(BigResidue::from(g, m.value()), k).lift();
}

}  // namespace wallsun
