#pragma once

// Property suites over ranges of moduli, primes and indices. Each check
// compares two independent routes or tests a structural law directly and
// records the first counterexample.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wallsun/abc_triples.hpp"
#include "wallsun/periods.hpp"
#include "wallsun/sieve.hpp"
#include "wallsun/wieferich.hpp"

namespace wallsun {

struct CheckResult {
  std::string name;
  u64 checked = 0;
  u64 violations = 0;
  u64 skipped = 0;
  std::optional<std::string> first_counterexample;

  void pass() { ++checked; }
  void fail(const std::string& what) {
    ++checked;
    ++violations;
    if (!first_counterexample) first_counterexample = what;
  }
  void expect(bool ok, const std::function<std::string()>& what) {
    if (ok) {
      pass();
    } else {
      fail(what());
    }
  }
  // Appends another chunk's results; `other` covers later inputs.
  void absorb(const CheckResult& other) {
    checked += other.checked;
    violations += other.violations;
    skipped += other.skipped;
    if (!first_counterexample) first_counterexample = other.first_counterexample;
  }
};

struct VerifyReport {
  std::string suite;
  u64 bound = 0;
  std::vector<CheckResult> checks;

  u64 violations() const {
    u64 v = 0;
    for (const auto& c : checks) v += c.violations;
    return v;
  }
};

enum class Suite { Wall, Lemmas, Criteria, Norm, Abc };

inline Suite parse_suite(const std::string& s) {
  if (s == "wall") return Suite::Wall;
  if (s == "lemmas") return Suite::Lemmas;
  if (s == "criteria") return Suite::Criteria;
  if (s == "norm") return Suite::Norm;
  if (s == "abc") return Suite::Abc;
  throw InvalidArgument("unknown verify suite: " + s);
}

namespace detail {

// Runs body(item, results) over items split into contiguous chunks, one chunk
// per thread, then concatenates the per-chunk results in input order.
template <class T, class Body>
std::vector<CheckResult> parallel_checks(const std::vector<T>& items, std::vector<std::string> names,
                                         unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(items.size(), 1))));
  std::vector<std::vector<CheckResult>> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto run = [&](unsigned t) {
    auto& res = parts[t];
    for (const auto& n : names) {
      res.emplace_back();
      res.back().name = n;
    }
    std::size_t begin = items.size() * t / threads;
    std::size_t end = items.size() * (t + 1) / threads;
    try {
      for (std::size_t i = begin; i < end; ++i) body(items[i], res);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<CheckResult> out = parts[0];
  for (unsigned t = 1; t < threads; ++t) {
    for (std::size_t c = 0; c < out.size(); ++c) out[c].absorb(parts[t][c]);
  }
  return out;
}

inline std::vector<u64> primes_below_excluding_2_5(u64 lo, u64 bound) {
  std::vector<u64> ps;
  if (bound <= lo) return ps;
  for (u64 p : primes_in(lo, bound - 1)) {
    if (p != 2 && p != 5) ps.push_back(p);
  }
  return ps;
}

}  // namespace detail

// π(p) from the generic multiple p² − 1 divides the Wall bound, and agrees
// with the divisor-enumeration route.
inline VerifyReport verify_wall(u64 bound, unsigned threads = 1) {
  auto primes = detail::primes_below_excluding_2_5(3, bound);
  VerifyReport rep{"wall", bound, {}};
  rep.checks = detail::parallel_checks(primes, {"wall_divisibility", "period_routes_agree"}, threads,
                                       [](u64 p, std::vector<CheckResult>& r) {
                                         u64 pi = period_by_order_reduction(p, period_multiple(p, 1));
                                         r[0].expect(wall_bound(p) % pi == 0, [&] {
                                           return "p=" + std::to_string(p) + " pi=" + std::to_string(pi);
                                         });
                                         u64 enumerated = pisano_prime(p);
                                         r[1].expect(enumerated == pi, [&] {
                                           return "p=" + std::to_string(p) + " order=" + std::to_string(pi) +
                                                  " divisor=" + std::to_string(enumerated);
                                         });
                                       });
  return rep;
}

// Rank divisibility for m ≤ bound; rank = order of αᾱ⁻¹, the lifting law and
// the Main Lemma for primes below bound.
inline VerifyReport verify_lemmas(u64 bound, unsigned threads = 1, u64 max_index = 1000) {
  VerifyReport rep{"lemmas", bound, {}};
  std::vector<u64> moduli;
  for (u64 m = 2; m <= bound; ++m) moduli.push_back(m);
  auto lemma1 = detail::parallel_checks(moduli, {"rank_divides_zero_indices"}, threads,
                                        [max_index](u64 m, std::vector<CheckResult>& r) {
                                          u64 l = rank_of_apparition(m);
                                          u64 a = 0, b = 1 % m;
                                          bool ok = true;
                                          u64 bad = 0;
                                          for (u64 n = 1; n <= max_index; ++n) {
                                            u64 c = a + b;
                                            if (c >= m) c -= m;
                                            a = b;
                                            b = c;
                                            if ((a == 0) != (n % l == 0)) {
                                              ok = false;
                                              bad = n;
                                              break;
                                            }
                                          }
                                          r[0].expect(ok, [&] {
                                            return "m=" + std::to_string(m) + " n=" + std::to_string(bad) +
                                                   " rank=" + std::to_string(l);
                                          });
                                        });
  rep.checks.insert(rep.checks.end(), lemma1.begin(), lemma1.end());

  auto primes = detail::primes_below_excluding_2_5(3, bound);
  auto prime_checks = detail::parallel_checks(
      primes, {"rank_is_order_of_alpha_over_conjugate", "lifting_law", "main_lemma"}, threads,
      [](u64 p, std::vector<CheckResult>& r) {
        for (int e = 1; e <= 2; ++e) {
          u64 pe = checked_pow(p, e);
          auto g = FastResidue::alpha(pe) * residue_inverse(FastResidue::alpha_bar(pe));
          Factorization bound_f = period_multiple(p, e);
          u64 order = multiplicative_order(g, bound_f);
          u64 rank = rank_of_apparition(pe);
          r[0].expect(order == rank, [&] {
            return "p^e=" + std::to_string(p) + "^" + std::to_string(e) + " order=" + std::to_string(order) +
                   " rank=" + std::to_string(rank);
          });
        }
        // The multiple p^e(p² − 1) for π(p^{e+1}) must fit in 64 bits.
        auto fits = [p](int e) {
          std::optional<u64> r = 1;
          for (int i = 0; i < e + 2 && r; ++i) r = checked_mul(*r, p);
          return r.has_value();
        };
        int max_e = 3;
        while (max_e > 1 && !fits(max_e)) --max_e;
        std::vector<u64> pis;
        for (int e = 1; e <= max_e + 1; ++e) {
          pis.push_back(period_by_order_reduction(checked_pow(p, e), period_multiple(p, e)));
        }
        for (int e = 1; e <= max_e; ++e) {
          u64 lo = pis[e - 1], hi = pis[e];
          r[1].expect(hi == lo || hi == p * lo, [&] {
            return "p=" + std::to_string(p) + " e=" + std::to_string(e) + " pi(p^e)=" + std::to_string(lo) +
                   " pi(p^(e+1))=" + std::to_string(hi);
          });
        }
        MainLemmaRecord rec = check_main_lemma(p);
        bool ok = rec.squarefree_at_rank && rec.conclusion_holds && pis[1] == p * pis[0] && rec.pi_p2 == pis[1];
        r[2].expect(ok, [&] {
          return "p=" + std::to_string(p) + (rec.squarefree_at_rank ? "" : " (p^2 divides F_rank)") +
                 " pi_p=" + std::to_string(pis[0]) + " pi_p2=" + std::to_string(pis[1]);
        });
      });
  rep.checks.insert(rep.checks.end(), prime_checks.begin(), prime_checks.end());
  return rep;
}

inline VerifyReport verify_criteria(u64 bound, unsigned threads = 1) {
  auto primes = detail::primes_below_excluding_2_5(7, bound);
  VerifyReport rep{"criteria", bound, {}};
  rep.checks = detail::parallel_checks(primes, {"k_value_vs_alpha_criterion"}, threads,
                                       [](u64 p, std::vector<CheckResult>& r) {
                                         KValue kv = fw_k_value(p);
                                         AlphaCriterion ac = alpha_criterion(p);
                                         r[0].expect((kv.k == 0) == ac.is_fw, [&] {
                                           return "p=" + std::to_string(p) + " k=" + std::to_string(kv.k) +
                                                  " a=" + std::to_string(ac.a) + " b=" + std::to_string(ac.b);
                                         });
                                       });
  return rep;
}

inline VerifyReport verify_norm(u64 bound, unsigned threads = 1) {
  auto primes = detail::primes_below_excluding_2_5(7, bound);
  VerifyReport rep{"norm", bound, {}};
  rep.checks = detail::parallel_checks(
      primes, {"two_a_plus_b", "unit_norm_mod_p2"}, threads, [](u64 p, std::vector<CheckResult>& r) {
        AlphaCriterion ac = alpha_criterion(p);
        r[0].expect(norm_constraint_holds(ac, p), [&] {
          return "p=" + std::to_string(p) + " a=" + std::to_string(ac.a) + " b=" + std::to_string(ac.b);
        });
        u64 p2 = p * p;
        FastResidue kp(ac.a % p2, ac.b % p2, p2);
        FastResidue lifted = FastResidue::one(p2) + kp * FastResidue(p, 0, p2);
        r[1].expect(lifted.norm() == 1, [&] { return "p=" + std::to_string(p); });
      });
  return rep;
}

// Skips (without failing) any n whose F_n cannot be factored within budget.
inline VerifyReport verify_abc(u64 bound, unsigned threads = 1, FactorBudget budget = {}) {
  std::vector<u64> ns;
  for (u64 n = 1; n <= bound; ++n) ns.push_back(n);
  VerifyReport rep{"abc", bound, {}};
  rep.checks = detail::parallel_checks(
      ns, {"height_bound", "radical_bound", "height_closed_form", "radical_prime_elements"}, threads,
      [budget](u64 n, std::vector<CheckResult>& r) {
        AbcTripleReport t;
        try {
          t = triple_report<Real128>(n, budget);
        } catch (const IncompleteFactorization&) {
          for (auto& c : r) ++c.skipped;
          return;
        }
        auto tag = [n] { return "n=" + std::to_string(n); };
        r[0].expect(t.height_bound_ok, tag);
        r[1].expect(t.radical_bound_ok, tag);
        GoldenInt closed = n % 2 == 1 ? GoldenInt::rational(5 * t.f_n * t.f_n) : GoldenInt::alpha().pow(2 * n);
        r[2].expect(closed == t.height, tag);
        FactorMap f = factorize(t.f_n, budget);
        r[3].expect(radical_from_prime_elements(fibonacci_triple(n), f) == t.radical, tag);
      });
  return rep;
}

inline VerifyReport run_suite(Suite s, u64 bound, unsigned threads = 1, FactorBudget budget = {}) {
  switch (s) {
    case Suite::Wall: return verify_wall(bound, threads);
    case Suite::Lemmas: return verify_lemmas(bound, threads);
    case Suite::Criteria: return verify_criteria(bound, threads);
    case Suite::Norm: return verify_norm(bound, threads);
    case Suite::Abc: return verify_abc(bound, threads, budget);
  }
  throw InvalidArgument("unknown suite");
}

}  // namespace wallsun
