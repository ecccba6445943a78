#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "wallsun/abc_triples.hpp"

using namespace wallsun;

TEST(Abc, TripleSumsToZero) {
  for (u64 n = 1; n <= 150; ++n) {
    AbcTriple t = fibonacci_triple(n);
    EXPECT_TRUE((t.a + t.b + t.c).is_zero());
    EXPECT_EQ(t.a.y(), 2 * oracle::fib(n));
  }
  EXPECT_THROW(fibonacci_triple(0), InvalidArgument);
}

TEST(Abc, HeightClosedForms) {
  for (u64 n = 1; n <= 150; ++n) {
    GoldenInt h = exact_height(fibonacci_triple(n));
    oracle::Big f = oracle::fib(n);
    if (n % 2 == 1) {
      EXPECT_EQ(h, GoldenInt::rational(5 * f * f)) << n;
    } else {
      EXPECT_EQ(h, GoldenInt::alpha().pow(2 * n)) << n;
    }
  }
}

TEST(Abc, HeightMatchesFloatingPoint) {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  for (u64 n = 1; n <= 60; ++n) {
    double f = static_cast<double>(oracle::fib(n));
    double an = std::pow(phi, static_cast<double>(n));
    double abar = std::pow(-1 / phi, static_cast<double>(n));
    double first = std::max({std::sqrt(5.0) * f, an, std::abs(abar)});
    double second = std::max({std::sqrt(5.0) * f, std::abs(abar), an});
    EXPECT_NEAR(log_height<Real128>(n).convert_to<double>(), std::log(first * second), 1e-9) << n;
  }
}

TEST(Abc, RadicalFromTrialDivision) {
  for (u64 n = 1; n <= 70; ++n) {
    oracle::Big rad = 5;
    for (const auto& p : oracle::prime_divisors(oracle::fib(n))) {
      if (p != 5) rad *= p * p;
    }
    EXPECT_EQ(triple_radical(n), rad) << n;
  }
}

TEST(Abc, RadicalFromPrimeElementsAgrees) {
  for (u64 n = 1; n <= 150; ++n) {
    SquarefreeSplit s = squarefree_split(n);
    EXPECT_EQ(radical_from_prime_elements(fibonacci_triple(n), s.factors), radical_from_factors(s.factors)) << n;
  }
}

TEST(Abc, SquarefreeSplit) {
  SquarefreeSplit s = squarefree_split(12);  // 144 = 2^4 · 3^2
  EXPECT_EQ(s.u, 1);
  EXPECT_EQ(s.v, 144);
  s = squarefree_split(30);  // 832040 = 2^3 · 5 · 11 · 31 · 61
  EXPECT_EQ(s.u, 5 * 11 * 31 * 61);
  EXPECT_EQ(s.v, 8);
}

TEST(Abc, QualityOfFirstTripleIsExactlyOne) {
  AbcTripleReport r = triple_report(1);
  EXPECT_EQ(r.quality, 1.0);
  EXPECT_EQ(r.radical, 5);
}

TEST(Abc, KnownQualities) {
  // n = 5: H = 125, rad = 5.
  EXPECT_DOUBLE_EQ(triple_report(5).quality, 3.0);
  // n = 12: H = α^24, rad = 5 · 2² · 3².
  AbcTripleReport r = triple_report(12);
  EXPECT_EQ(r.radical, 180);
  EXPECT_NEAR(r.quality, 24 * std::log((1 + std::sqrt(5.0)) / 2) / std::log(180.0), 1e-12);
}

TEST(Abc, BoundsHoldUpTo150) {
  for (u64 n = 1; n <= 150; ++n) {
    AbcTripleReport r = triple_report<Real128>(n);
    EXPECT_TRUE(r.height_bound_ok) << n;
    EXPECT_TRUE(r.radical_bound_ok) << n;
  }
}

TEST(Abc, PrecisionsAgree) {
  for (u64 n : {7u, 50u, 101u, 150u}) {
    EXPECT_NEAR(triple_report<Real128>(n).quality, triple_report<Real256>(n).quality, 1e-15) << n;
  }
}

TEST(Abc, TinyBudgetReportsIncompleteFactorization) {
  // F_142 has two large prime factors; 10 rho iterations cannot separate them.
  EXPECT_THROW(triple_report(142, {10, 0}), IncompleteFactorization);
}
