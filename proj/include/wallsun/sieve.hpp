#pragma once

#include <cstddef>
#include <vector>

#include "wallsun/arith.hpp"

namespace wallsun {

// Primes ≤ limit by the plain sieve of Eratosthenes.
inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Segmented sieve over an inclusive range [lo, hi]. Segment i covers
// [lo + i·S, min(hi, lo + (i+1)·S − 1)]; segments are independent, so any
// subset can be sieved concurrently once the object is built.
class PrimeSegments {
 public:
  PrimeSegments(u64 lo, u64 hi, u64 segment_size) : lo_(lo < 2 ? 2 : lo), hi_(hi), size_(segment_size) {
    if (segment_size == 0) throw InvalidArgument("segment size must be positive");
    if (hi_ >= lo_) base_ = primes_up_to(isqrt(hi_));
  }

  bool empty() const { return hi_ < lo_; }

  std::size_t segment_count() const {
    if (empty()) return 0;
    return static_cast<std::size_t>((hi_ - lo_) / size_ + 1);
  }

  u64 segment_begin(std::size_t i) const { return lo_ + static_cast<u64>(i) * size_; }
  u64 segment_end(std::size_t i) const {
    u64 b = segment_begin(i);
    return hi_ - b < size_ - 1 ? hi_ : b + size_ - 1;
  }

  // Primes of segment i, ascending.
  std::vector<u64> primes(std::size_t i) const {
    std::vector<u64> out;
    u64 begin = segment_begin(i);
    u64 end = segment_end(i);
    std::vector<char> composite(end - begin + 1, 0);
    for (u64 p : base_) {
      if (p * p > end) break;
      u64 start = begin % p == 0 ? begin : begin + (p - begin % p);
      if (start < p * p) start = p * p;
      for (u64 j = start; j <= end; j += p) {
        composite[j - begin] = 1;
        if (j > end - p) break;
      }
    }
    for (u64 v = begin;; ++v) {
      if (!composite[v - begin]) out.push_back(v);
      if (v == end) break;
    }
    return out;
  }

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  u64 segment_size() const { return size_; }

 private:
  u64 lo_;
  u64 hi_;
  u64 size_;
  std::vector<u64> base_;
};

// All primes in [lo, hi] as one list.
inline std::vector<u64> primes_in(u64 lo, u64 hi, u64 segment_size = 1 << 16) {
  PrimeSegments seg(lo, hi, segment_size);
  std::vector<u64> out;
  for (std::size_t i = 0; i < seg.segment_count(); ++i) {
    auto part = seg.primes(i);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace wallsun
