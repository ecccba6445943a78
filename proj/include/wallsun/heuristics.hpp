#pragma once

// Expected counts of FW primes and near misses under three per-prime models:
//   CDP            q(p) = 1/p
//   Klaska         q(p) = 1/p² for p ≡ ±1 mod 5, 1/p for p ≡ ±2 mod 5
//   NormHeuristic  q(p) = 1/p (the norm constraint removes one degree of
//                  freedom from α^{p²−1} = 1 + (a + bα)p in both cases)
// A near miss at threshold T admits 2T + 1 signed k-values, so its per-prime
// probability is min(1, (2T + 1)·q(p)).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "wallsun/scan.hpp"
#include "wallsun/sieve.hpp"

namespace wallsun {

enum class Model { CDP, Klaska, NormHeuristic };

inline constexpr Model kAllModels[] = {Model::CDP, Model::Klaska, Model::NormHeuristic};

// Prime sums are exact up to here; beyond, the remaining tail is integrated
// against the prime density 1/ln t.
inline constexpr u64 kExactPrimeSumLimit = 100'000'000;

struct HeuristicModel {
  Model name;
  const char* description;
};

inline const char* to_string(Model m) {
  switch (m) {
    case Model::CDP: return "CDP";
    case Model::Klaska: return "Klaska";
    case Model::NormHeuristic: return "NormHeuristic";
  }
  return "?";
}

inline HeuristicModel describe(Model m) {
  switch (m) {
    case Model::CDP: return {m, "k uniform on p residues: 1/p per prime"};
    case Model::Klaska: return {m, "1/p^2 for p = +-1 mod 5, 1/p for p = +-2 mod 5"};
    case Model::NormHeuristic: return {m, "norm constraint 2a+b = 0 mod p leaves p choices: 1/p per prime"};
  }
  return {m, ""};
}

inline Model parse_model(const std::string& s) {
  std::string l;
  for (char c : s) l.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (l == "cdp") return Model::CDP;
  if (l == "klaska") return Model::Klaska;
  if (l == "norm" || l == "normheuristic") return Model::NormHeuristic;
  throw InvalidArgument("unknown heuristic model: " + s);
}

// Probability that a given k-value is hit at p under model m.
inline double per_prime_probability(Model m, u64 p) {
  double pd = static_cast<double>(p);
  if (m == Model::Klaska && splitting_type(p) == Splitting::Split) return 1.0 / (pd * pd);
  return 1.0 / pd;
}

inline double near_miss_probability(Model m, u64 p, u64 threshold) {
  return std::min(1.0, static_cast<double>(2 * threshold + 1) * per_prime_probability(m, p));
}

struct Expectation {
  double value = 0.0;
  bool approximate = false;
};

namespace detail {

// Σ over primes in [lo, hi] of f(p), summed per segment and reduced in
// segment order so the floating-point result is reproducible.
template <class F>
double exact_prime_sum(u64 lo, u64 hi, F f) {
  if (hi < lo) return 0.0;
  PrimeSegments seg(lo, hi, u64{1} << 20);
  long double total = 0.0L;
  for (std::size_t i = 0; i < seg.segment_count(); ++i) {
    long double part = 0.0L;
    for (u64 p : seg.primes(i)) part += f(p);
    total += part;
  }
  return static_cast<double>(total);
}

// ∫_lo^hi density(t)/ln t dt by composite Simpson in u = ln t.
template <class F>
double density_integral(double lo, double hi, F density) {
  if (hi <= lo) return 0.0;
  const int n = 20000;
  double a = std::log(lo), b = std::log(hi), h = (b - a) / n;
  auto g = [&](double u) {
    double t = std::exp(u);
    return density(t) * t / u;
  };
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 == 1 ? 4 : 2);
  return s * h / 3;
}

template <class PerPrime, class Density>
Expectation prime_sum(u64 lo, u64 hi, PerPrime per_prime, Density density) {
  if (lo < 7 || hi < lo) throw RangeInvalid("expected counts need 7 <= lo <= hi");
  Expectation e;
  u64 exact_hi = std::min(hi, kExactPrimeSumLimit);
  e.value = exact_prime_sum(lo, exact_hi, per_prime);
  if (hi > kExactPrimeSumLimit) {
    e.approximate = true;
    e.value += density_integral(static_cast<double>(std::max(lo, kExactPrimeSumLimit)), static_cast<double>(hi), density);
  }
  return e;
}

// Average of q(t) over residue classes mod 5 (half split, half inert).
inline double mean_probability(Model m, double t, u64 threshold) {
  double w = static_cast<double>(2 * threshold + 1);
  if (m == Model::Klaska) return 0.5 * std::min(1.0, w / (t * t)) + 0.5 * std::min(1.0, w / t);
  return std::min(1.0, w / t);
}

}  // namespace detail

inline Expectation expected_fw_count(Model m, u64 lo, u64 hi) {
  return detail::prime_sum(
      lo, hi, [m](u64 p) { return per_prime_probability(m, p); },
      [m](double t) { return detail::mean_probability(m, t, 0); });
}

inline Expectation expected_near_misses(Model m, u64 lo, u64 hi, u64 threshold) {
  return detail::prime_sum(
      lo, hi, [m, threshold](u64 p) { return near_miss_probability(m, p, threshold); },
      [m, threshold](double t) { return detail::mean_probability(m, t, threshold); });
}

inline Expectation expected_near_misses(u64 lo, u64 hi, u64 threshold) {
  return expected_near_misses(Model::CDP, lo, hi, threshold);
}

struct ComparisonReport {
  u64 range_start = 0;
  u64 range_end = 0;
  u64 threshold = 0;
  Model model = Model::CDP;
  double expected = 0.0;
  u64 observed = 0;
  double poisson_sigma = 0.0;
  double z_score = 0.0;
  bool anomalous = false;
  bool approximate = false;
};

inline ComparisonReport make_comparison(u64 lo, u64 hi, u64 threshold, Model m, double expected, u64 observed,
                                        bool approximate = false) {
  ComparisonReport r;
  r.range_start = lo;
  r.range_end = hi;
  r.threshold = threshold;
  r.model = m;
  r.expected = expected;
  r.observed = observed;
  r.approximate = approximate;
  r.poisson_sigma = std::sqrt(expected);
  r.z_score = expected > 0 ? (static_cast<double>(observed) - expected) / r.poisson_sigma : 0.0;
  r.anomalous = std::abs(r.z_score) > 3.0;
  return r;
}

// Observed near misses of a completed scan against the model's expectation.
inline ComparisonReport compare(const ScanSummary& s, Model m) {
  Expectation e = expected_near_misses(m, s.range_start, s.range_end, s.threshold);
  return make_comparison(s.range_start, s.range_end, s.threshold, m, e.value, s.near_misses, e.approximate);
}

}  // namespace wallsun
