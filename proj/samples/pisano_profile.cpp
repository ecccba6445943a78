// Prints π(m), the rank of apparition and the per-prime-power breakdown for a
// few moduli, showing where the lcm and the naive product part ways.

#include <cstdio>

#include "wallsun/periods.hpp"

int main() {
  for (wallsun::u64 m : {10ULL, 12ULL, 49ULL, 1000ULL, 1'000'000'007ULL}) {
    wallsun::PisanoProfile prof = wallsun::pisano(m);
    std::printf("m = %llu: pi = %llu, rank = %llu\n", static_cast<unsigned long long>(m),
                static_cast<unsigned long long>(prof.pi), static_cast<unsigned long long>(prof.rank));
    for (const auto& f : prof.factors) {
      std::printf("  %llu^%d: pi = %llu, rank = %llu\n", static_cast<unsigned long long>(f.p), f.e,
                  static_cast<unsigned long long>(f.pi), static_cast<unsigned long long>(f.rank));
    }
    if (prof.factor_period_product && *prof.factor_period_product != prof.pi) {
      std::printf("  product of factor periods would give %llu\n",
                  static_cast<unsigned long long>(*prof.factor_period_product));
    }
  }
}
