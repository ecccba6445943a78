#pragma once

// The Fibonacci abc-triple (√5·F_n, −α^n, ᾱ^n), which sums to zero in Z[α]
// because √5·F_n = α^n − ᾱ^n.
//
// Height. H = max{|a|,|b|,|c|}·max{|ā|,|b̄|,|c̄|} over the two real embeddings.
// Since |ᾱ^n| ≤ 1 ≤ α^n and the conjugate triple is (−√5F_n, −ᾱ^n, α^n), both
// maxima equal max(√5F_n, α^n). From √5F_n = α^n − ᾱ^n:
//   n odd:  ᾱ^n < 0, so √5F_n > α^n and H = 5F_n².
//   n even: ᾱ^n > 0, so √5F_n < α^n and H = α^{2n} = 5F_n² + 2 − ᾱ^{2n}.
// The code does not rely on these closed forms: it picks the maxima with exact
// sign tests in Z[α] and multiplies them, and the tests check the closed forms.
//
// Radical. α and ᾱ are units, so only √5·F_n contributes primes. Using
// absolute norms, √5 gives 5, each rational prime p ≠ 5 dividing F_n gives p²
// (two conjugate primes of norm p when split, one of norm p² when inert), and
// a factor 5 in F_n is the same prime ideal as √5:
//   rad = 5 · ∏_{p | F_n, p ≠ 5} p².

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "wallsun/factor.hpp"
#include "wallsun/fibonacci.hpp"
#include "wallsun/golden_ring.hpp"

namespace wallsun {

template <unsigned Bits>
using RealBits =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
                                  boost::multiprecision::et_off>;
using Real128 = RealBits<128>;
using Real256 = RealBits<256>;

inline constexpr u64 kDefaultAbcMaxN = 150;

struct AbcTriple {
  GoldenInt a;  // √5·F_n
  GoldenInt b;  // −α^n
  GoldenInt c;  // ᾱ^n
};

inline AbcTriple fibonacci_triple(u64 n) {
  if (n == 0) throw InvalidArgument("abc triple needs n >= 1");
  AbcTriple t{GoldenInt::sqrt5() * GoldenInt::rational(fib_exact(n)), -GoldenInt::alpha().pow(n),
              GoldenInt::alpha_bar().pow(n)};
  if (!(t.a + t.b + t.c).is_zero()) throw SanityViolation("triple does not sum to zero at n = " + std::to_string(n));
  // b and c are units, so the triple is in lowest terms.
  if (!is_unit(t.b) || !is_unit(t.c)) throw SanityViolation("alpha^n is not a unit");
  return t;
}

// Element of Z[α] whose real embedding is H(a, b, c).
inline GoldenInt exact_height(const AbcTriple& t) {
  auto max_abs = [](std::array<GoldenInt, 3> v) {
    GoldenInt best = real_abs(v[0]);
    for (int i = 1; i < 3; ++i) {
      GoldenInt cand = real_abs(v[i]);
      if (real_compare(cand, best) == std::strong_ordering::greater) best = cand;
    }
    return best;
  };
  GoldenInt first = max_abs({t.a, t.b, t.c});
  GoldenInt second = max_abs({conjugate(t.a), conjugate(t.b), conjugate(t.c)});
  return first * second;
}

template <class Float>
Float log_height(u64 n) {
  using std::log;
  return log(real_value<Float>(exact_height(fibonacci_triple(n))));
}

struct SquarefreeSplit {
  BigInt f_n;
  BigInt u;  // ∏ of primes dividing F_n exactly once
  BigInt v;  // F_n / U_n
  FactorMap factors;
};

inline SquarefreeSplit squarefree_split(u64 n, FactorBudget budget = {}) {
  SquarefreeSplit s;
  s.f_n = fib_exact(n);
  s.factors = factorize(s.f_n, budget);
  if (!s.factors.complete) {
    throw IncompleteFactorization("F_" + std::to_string(n) + " not fully factored; cofactor " +
                                  s.factors.cofactor.str());
  }
  s.u = 1;
  for (const auto& [p, e] : s.factors.factors) {
    if (e == 1) s.u *= p;
  }
  s.v = s.f_n / s.u;
  return s;
}

inline BigInt radical_from_factors(const FactorMap& f) {
  BigInt rad = 5;
  for (const auto& [p, e] : f.factors) {
    if (p != 5) rad *= p * p;
  }
  return rad;
}

inline BigInt triple_radical(u64 n, FactorBudget budget = {}) {
  return radical_from_factors(squarefree_split(n, budget).factors);
}

// The radical assembled from explicit prime elements of Z[α]: every prime
// element above a rational prime dividing √5·F_n, deduplicated up to units,
// weighted by |N(q)|. Independent of the closed formula above.
inline BigInt radical_from_prime_elements(const AbcTriple& t, const FactorMap& f) {
  std::vector<GoldenInt> primes{GoldenInt::sqrt5()};
  for (const auto& [p, e] : f.factors) {
    for (const GoldenInt& q : prime_elements_above(p)) {
      bool seen = false;
      for (const GoldenInt& r : primes) seen = seen || is_associate(q, r);
      if (!seen) primes.push_back(q);
    }
  }
  GoldenInt abc = t.a * t.b * t.c;
  BigInt rad = 1;
  for (const GoldenInt& q : primes) {
    if (!divides(q, abc)) throw SanityViolation("prime element " + q.str() + " does not divide abc");
    rad *= BigInt(boost::multiprecision::abs(norm(q)));
  }
  return rad;
}

struct AbcTripleReport {
  u64 n = 0;
  BigInt f_n;
  BigInt u_n;
  BigInt v_n;
  BigInt radical;
  GoldenInt height;  // exact, as an element of Z[α]
  double log_height = 0.0;
  double log_radical = 0.0;
  double quality = 0.0;
  bool height_bound_ok = false;   // H ≥ 5F_n²
  bool radical_bound_ok = false;  // rad ≤ 5U_n²V_n
};

template <class Float>
Float quality(const GoldenInt& height, const BigInt& radical) {
  using std::log;
  return log(real_value<Float>(height)) / log(Float(radical));
}

template <class Float = Real256>
AbcTripleReport triple_report(u64 n, FactorBudget budget = {}) {
  AbcTriple t = fibonacci_triple(n);
  SquarefreeSplit split = squarefree_split(n, budget);
  AbcTripleReport r;
  r.n = n;
  r.f_n = split.f_n;
  r.u_n = split.u;
  r.v_n = split.v;
  r.radical = radical_from_factors(split.factors);
  r.height = exact_height(t);
  using std::log;
  Float lh = log(real_value<Float>(r.height));
  Float lr = log(Float(r.radical));
  r.log_height = static_cast<double>(lh);
  r.log_radical = static_cast<double>(lr);
  r.quality = static_cast<double>(lh / lr);
  BigInt five_f2 = 5 * r.f_n * r.f_n;
  r.height_bound_ok = real_sign(r.height - GoldenInt::rational(five_f2)) >= 0;
  r.radical_bound_ok = r.radical <= 5 * r.u_n * r.u_n * r.v_n;
  return r;
}

}  // namespace wallsun
