// Quality of the triples (√5 F_n, −α^n, ᾱ^n) for small n, highest first.

#include <algorithm>
#include <cstdio>
#include <vector>

#include "wallsun/abc_triples.hpp"

int main() {
  std::vector<wallsun::AbcTripleReport> rows;
  for (wallsun::u64 n = 1; n <= 100; ++n) rows.push_back(wallsun::triple_report(n));
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.quality > b.quality; });
  for (std::size_t i = 0; i < 10; ++i) {
    std::printf("n = %3llu  F_n = %s  quality = %.6f\n", static_cast<unsigned long long>(rows[i].n),
                rows[i].f_n.str().c_str(), rows[i].quality);
  }
}
