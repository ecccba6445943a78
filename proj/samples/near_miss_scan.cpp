// Scans a prime range for small k-values and compares the count with the
// uniform-k expectation. Usage: sample_near_miss_scan [lo hi threshold]

#include <cstdlib>
#include <iostream>
#include <thread>

#include "wallsun/heuristics.hpp"
#include "wallsun/scan.hpp"

int main(int argc, char** argv) {
  wallsun::ScanConfig cfg;
  cfg.range_start = argc > 2 ? std::strtoull(argv[1], nullptr, 10) : 7;
  cfg.range_end = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1'000'000;
  cfg.threshold = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 10;
  cfg.worker_count = std::max(1u, std::thread::hardware_concurrency());

  std::cout << wallsun::fw_csv_header() << '\n';
  wallsun::ScanSummary s = wallsun::scan(cfg, [](const wallsun::FwRecord& r) { std::cout << to_csv(r) << '\n'; });
  wallsun::ComparisonReport rep = wallsun::compare(s, wallsun::Model::CDP);
  std::cerr << s.primes_tested << " primes, " << s.near_misses << " with |k| <= " << cfg.threshold << " (expected "
            << rep.expected << ", z = " << rep.z_score << "), " << s.fw_found << " FW primes\n";
}
