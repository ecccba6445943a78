// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "wallsun/io.hpp"
#include "wallsun/wallsun.hpp"

using namespace wallsun;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.ok) ++failures;
  std::printf("AC%-2d %s  %s  [%s] (%.1fs)\n", id, o.ok ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string scan_csv(ScanConfig cfg, ScanSummary* summary = nullptr) {
  std::ostringstream os;
  os << fw_csv_header() << '\n';
  ScanSummary s = scan(cfg, [&](const FwRecord& r) { os << to_csv(r) << '\n'; });
  if (summary) *summary = s;
  return os.str();
}

}  // namespace

int main() {
  criterion(1, "pisano period equals brute-force cycle length, 2 <= m <= 10^4", [] {
    u64 checked = 0;
    for (u64 m = 2; m <= 10'000; ++m) {
      u64 got = pisano(m).pi, want = oracle::pisano(m);
      if (got != want) return Outcome{false, "m=" + std::to_string(m) + " got " + std::to_string(got)};
      ++checked;
    }
    return Outcome{true, std::to_string(checked) + " moduli"};
  });

  criterion(2, "pi(12) = 24 (lcm of factor periods, not the product 48)", [] {
    PisanoProfile p = pisano(12);
    bool ok = p.pi == 24 && oracle::pisano(12) == 24 && p.factor_period_product == u64{48};
    return Outcome{ok, "pi=" + std::to_string(p.pi) + " product=" + std::to_string(p.factor_period_product.value_or(0))};
  });

  criterion(3, "Wall divisibility: pi(p) | p-1 or 2(p+1), primes p < 10^6", [] {
    VerifyReport r = verify_wall(1'000'000, threads());
    u64 direct_bad = 0;
    for (u64 p : oracle::primes(3, 999'999)) {
      if (p == 5) continue;
      auto f = fib_pair_mod_u64(wall_bound(p), p);
      if (f.f_n != 0 || f.f_n1 != 1) ++direct_bad;
    }
    bool ok = r.violations() == 0 && direct_bad == 0;
    return Outcome{ok, std::to_string(r.checks[0].checked) + " primes, " + std::to_string(r.violations() + direct_bad) +
                           " violations"};
  });

  criterion(4, "lifting law pi(p^(e+1)) in {pi(p^e), p*pi(p^e)}, p < 500, e <= 3", [] {
    u64 checked = 0, oracle_checked = 0;
    for (u64 p : oracle::primes(2, 499)) {
      std::vector<u64> pis;
      u64 pe = 1;
      for (int e = 1; e <= 4; ++e) {
        pe *= p;
        u64 pi = pisano_prime_power(p, e);
        u64 by_order = period_by_order_reduction(pe, period_multiple(p, e));
        if (pi != by_order) return Outcome{false, "routes differ at " + std::to_string(p) + "^" + std::to_string(e)};
        if (pe <= 2'000'000) {
          if (oracle::pisano(pe) != pi) return Outcome{false, "oracle differs at " + std::to_string(pe)};
          ++oracle_checked;
        }
        pis.push_back(pi);
      }
      for (int e = 1; e <= 3; ++e) {
        u64 lo = pis[e - 1], hi = pis[e];
        if (hi != lo && hi != p * lo) {
          return Outcome{false, "p=" + std::to_string(p) + " e=" + std::to_string(e)};
        }
        ++checked;
      }
    }
    return Outcome{true, std::to_string(checked) + " steps, " + std::to_string(oracle_checked) + " brute-forced"};
  });

  criterion(5, "F_n = 0 mod m iff l(m) | n, m <= 10^4, n <= 1000", [] {
    u64 pairs = 0;
    for (u64 m = 2; m <= 10'000; ++m) {
      u64 l = rank_of_apparition(m);
      u64 a = 0, b = 1;
      for (u64 n = 1; n <= 1000; ++n) {
        u64 c = (a + b) % m;
        a = b;
        b = c;
        if ((a == 0) != (n % l == 0)) {
          return Outcome{false, "m=" + std::to_string(m) + " n=" + std::to_string(n)};
        }
        ++pairs;
      }
    }
    return Outcome{true, std::to_string(pairs) + " (m, n) pairs"};
  });

  criterion(6, "l(p^e) = order of alpha/alphabar mod p^e, p < 500, e <= 2", [] {
    u64 checked = 0;
    for (u64 p : oracle::primes(2, 499)) {
      u64 pe = 1;
      for (int e = 1; e <= 2; ++e) {
        pe *= p;
        oracle::Residue abar{1, pe - 1, pe};
        oracle::Residue g = oracle::mul({0, 1, pe}, oracle::inverse_by_power(abar));
        u64 ord = oracle::order(g);
        auto lib = FastResidue::alpha(pe) * residue_inverse(FastResidue::alpha_bar(pe));
        u64 lib_ord = multiplicative_order(lib, period_multiple(p, e));
        u64 l = rank_of_apparition(pe);
        if (ord != l || lib_ord != l || oracle::rank(pe) != l) {
          return Outcome{false, std::to_string(p) + "^" + std::to_string(e) + " order=" + std::to_string(ord) +
                                    " rank=" + std::to_string(l)};
        }
        ++checked;
      }
    }
    return Outcome{true, std::to_string(checked) + " prime powers"};
  });

  criterion(7, "p || F_l(p) implies pi(p^2) = p*pi(p), p < 10^4", [] {
    u64 checked = 0;
    for (u64 p : oracle::primes(3, 9'999)) {
      if (p == 5) continue;
      MainLemmaRecord r = check_main_lemma(p);
      if (!r.squarefree_at_rank) return Outcome{false, "hypothesis fails at p=" + std::to_string(p) + " (FW prime?)"};
      if (r.pi_p2 != p * r.pi_p) return Outcome{false, "conclusion fails at p=" + std::to_string(p)};
      ++checked;
    }
    return Outcome{true, std::to_string(checked) + " primes, hypothesis held for all"};
  });

  criterion(8, "k = 0 iff alpha^(p^2-1) = 1 mod p^2, primes 7 <= p < 10^5", [] {
    VerifyReport r = verify_criteria(100'000, threads());
    return Outcome{r.violations() == 0 && r.checks[0].checked == oracle::primes(7, 99'999).size(),
                   std::to_string(r.checks[0].checked) + " primes, " + std::to_string(r.violations()) + " disagreements"};
  });

  criterion(9, "2a + b = 0 mod p, primes 7 <= p < 10^4", [] {
    VerifyReport r = verify_norm(10'000, threads());
    return Outcome{r.violations() == 0 && r.checks[0].checked > 0,
                   std::to_string(r.checks[0].checked) + " primes, " + std::to_string(r.violations()) + " violations"};
  });

  criterion(10, "no Fibonacci-Wieferich prime in [7, 10^8]", [] {
    ScanConfig cfg;
    cfg.range_start = 7;
    cfg.range_end = 100'000'000;
    cfg.worker_count = threads();
    ScanSummary s = scan(cfg, [](const FwRecord&) {});
    bool ok = s.complete && s.fw_found == 0 && s.primes_tested == 5'761'455 - 3;
    return Outcome{ok, std::to_string(s.primes_tested) + " primes, " + std::to_string(s.fw_found) + " FW, min |k| = " +
                           std::to_string(s.min_abs_k.value_or(0))};
  });

  criterion(11, "pinned k-values (7,3) (11,5) (13,3) (17,-1)", [] {
    const std::pair<u64, i64> pins[] = {{7, 3}, {11, 5}, {13, 3}, {17, -1}};
    std::string got;
    bool ok = true;
    for (auto [p, k] : pins) {
      i64 lib = fw_test(p).k;
      ok = ok && lib == k && oracle::k_value(p) == k;
      got += "(" + std::to_string(p) + "," + std::to_string(lib) + ")";
    }
    return Outcome{ok, got};
  });

  criterion(12, "near misses on [10^5, 10^7], T = 100, within 3 sqrt(expected)", [] {
    ScanConfig cfg;
    cfg.range_start = 100'000;
    cfg.range_end = 10'000'000;
    cfg.threshold = 100;
    cfg.worker_count = threads();
    ScanSummary s = scan(cfg, [](const FwRecord&) {});
    ComparisonReport r = compare(s, Model::CDP);
    double dev = std::abs(static_cast<double>(r.observed) - r.expected);
    std::ostringstream d;
    d << "observed " << r.observed << ", expected " << r.expected << ", z = " << r.z_score;
    return Outcome{dev <= 3 * std::sqrt(r.expected), d.str()};
  });

  criterion(13, "byte-identical scan CSV for 1/4/16 workers and after kill/resume, [7, 10^5]", [] {
    ScanConfig cfg;
    cfg.range_start = 7;
    cfg.range_end = 100'000;
    cfg.segment_size = 8192;
    std::string base = scan_csv(cfg);
    for (unsigned w : {4u, 16u}) {
      cfg.worker_count = w;
      if (scan_csv(cfg) != base) return Outcome{false, "differs at " + std::to_string(w) + " workers"};
    }
    namespace fs = std::filesystem;
    fs::path ck = fs::temp_directory_path() / ("wallsun_acceptance_" + std::to_string(::getpid()) + ".ckpt");
    fs::remove(ck);
    cfg.checkpoint_path = ck;
    cfg.worker_count = 4;
    int interruptions = 0;
    for (std::size_t step : {3u, 2u, 4u}) {
      cfg.stop_after_segments = step;
      ScanSummary partial;
      scan_csv(cfg, &partial);
      if (partial.complete) break;
      ++interruptions;
    }
    cfg.stop_after_segments.reset();
    std::string resumed = scan_csv(cfg);
    fs::remove(ck);
    bool ok = resumed == base && interruptions == 3;
    return Outcome{ok, std::to_string(std::count(base.begin(), base.end(), '\n') - 1) + " rows, " +
                           std::to_string(interruptions) + " interruptions"};
  });

  criterion(14, "abc bounds rad <= 5 U^2 V and H >= 5 F^2 for n <= 120; quality(1) = 1.0", [] {
    std::ofstream table("abc_quality_table.csv");
    table << abc_csv_header() << '\n';
    u64 complete = 0, skipped = 0;
    bool bounds = true;
    double q1 = -1;
    for (u64 n = 1; n <= 120; ++n) {
      try {
        AbcTripleReport r = triple_report(n);
        table << to_csv(r) << '\n';
        bounds = bounds && r.height_bound_ok && r.radical_bound_ok;
        if (n == 1) q1 = r.quality;
        ++complete;
      } catch (const IncompleteFactorization&) {
        ++skipped;
      }
    }
    return Outcome{bounds && q1 == 1.0 && complete > 0,
                   std::to_string(complete) + " complete, " + std::to_string(skipped) +
                       " skipped, quality(1) = " + format_double(q1) + ", table in abc_quality_table.csv"};
  });

  criterion(15, "chi-square of k mod 16 over primes in [10^3, 10^6] below 37.697 (df 15, 0.001)", [] {
    std::array<u64, 16> counts{};
    u64 n = 0;
    for (u64 p : primes_in(1'000, 1'000'000)) {
      i64 k = fw_k_value(p).k;
      ++counts[static_cast<std::size_t>(((k % 16) + 16) % 16)];
      ++n;
    }
    double expected = static_cast<double>(n) / 16, chi2 = 0;
    for (u64 c : counts) chi2 += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    return Outcome{chi2 < 37.697, "chi2 = " + format_double(chi2) + " over " + std::to_string(n) + " primes"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
