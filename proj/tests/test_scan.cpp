#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "wallsun/scan.hpp"

using namespace wallsun;
namespace fs = std::filesystem;

namespace {

std::string csv_of(const ScanConfig& cfg, ScanSummary* summary = nullptr) {
  std::ostringstream os;
  os << fw_csv_header() << '\n';
  ScanSummary s = scan(cfg, [&](const FwRecord& r) { os << to_csv(r) << '\n'; });
  if (summary) *summary = s;
  return os.str();
}

fs::path temp_path(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("wallsun_test_" + std::to_string(::getpid()) + "_" + name);
  fs::remove(p);
  return p;
}

ScanConfig config(u64 lo, u64 hi) {
  ScanConfig c;
  c.range_start = lo;
  c.range_end = hi;
  c.segment_size = 4096;
  return c;
}

}  // namespace

TEST(Scan, NearMissesMatchOracle) {
  ScanSummary s;
  auto records = scan_records(config(7, 30'000), &s);
  std::vector<u64> ref;
  u64 tested = 0;
  for (u64 p : oracle::primes(7, 30'000)) {
    ++tested;
    i64 k = oracle::k_value(p);
    if (k >= -100 && k <= 100) ref.push_back(p);
  }
  ASSERT_EQ(records.size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(records[i].p, ref[i]);
  EXPECT_EQ(s.primes_tested, tested);
  EXPECT_EQ(s.near_misses, ref.size());
  EXPECT_EQ(s.fw_found, 0u);
  EXPECT_TRUE(s.complete);
  ASSERT_TRUE(s.min_abs_k.has_value());
  EXPECT_EQ(*s.min_abs_k, 1u);
}

TEST(Scan, WorkerCountDoesNotChangeOutput) {
  ScanConfig c = config(7, 100'000);
  std::string base = csv_of(c);
  for (unsigned w : {2u, 4u, 16u}) {
    c.worker_count = w;
    EXPECT_EQ(csv_of(c), base) << w;
  }
}

TEST(Scan, FullCrossCheckFindsNoDisagreement) {
  ScanConfig c = config(7, 20'000);
  c.cross_check_sample_rate = {1, 1};
  ScanSummary s;
  scan_records(c, &s);
  EXPECT_EQ(s.cross_checked, s.primes_tested);
}

TEST(Scan, CheckpointResumeReproducesOutput) {
  ScanConfig c = config(7, 100'000);
  std::string straight = csv_of(c);
  fs::path ck = temp_path("resume.ckpt");
  c.checkpoint_path = ck;
  c.worker_count = 3;
  c.stop_after_segments = 5;
  ScanSummary partial;
  csv_of(c, &partial);
  EXPECT_FALSE(partial.complete);
  ASSERT_TRUE(fs::exists(ck));
  c.stop_after_segments.reset();
  ScanSummary full;
  EXPECT_EQ(csv_of(c, &full), straight);
  EXPECT_TRUE(full.complete);
  // A finished checkpoint resumes to the same output with no further work.
  EXPECT_EQ(csv_of(c), straight);
  fs::remove(ck);
}

TEST(Scan, CheckpointFromDifferentConfigIsRejected) {
  ScanConfig c = config(7, 50'000);
  fs::path ck = temp_path("mismatch.ckpt");
  c.checkpoint_path = ck;
  c.stop_after_segments = 2;
  csv_of(c);
  c.threshold = 50;
  EXPECT_THROW(csv_of(c), CheckpointCorrupt);
  fs::remove(ck);
}

TEST(Scan, TruncatedCheckpointIsRejected) {
  ScanConfig c = config(7, 50'000);
  fs::path ck = temp_path("trunc.ckpt");
  c.checkpoint_path = ck;
  c.stop_after_segments = 4;
  csv_of(c);
  std::string text;
  {
    std::ifstream in(ck);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  {
    std::ofstream out(ck, std::ios::trunc);
    out << text.substr(0, text.size() - 10);
  }
  EXPECT_THROW(csv_of(c), CheckpointCorrupt);
  fs::remove(ck);
}

TEST(Scan, ConfigValidation) {
  EXPECT_THROW(csv_of(config(2, 100)), ConfigInvalid);
  ScanConfig c = config(7, 100);
  c.segment_size = 0;
  EXPECT_THROW(csv_of(c), ConfigInvalid);
  c = config(7, 100);
  c.worker_count = 0;
  EXPECT_THROW(csv_of(c), ConfigInvalid);
  c = config(7, 100);
  c.cross_check_sample_rate = {3, 2};
  EXPECT_THROW(csv_of(c), ConfigInvalid);
}

TEST(Scan, EmptyRange) {
  ScanSummary s;
  auto r = scan_records(config(24, 28), &s);
  EXPECT_TRUE(r.empty());
  EXPECT_EQ(s.primes_tested, 0u);
  EXPECT_TRUE(s.complete);
  EXPECT_FALSE(s.min_abs_k.has_value());
}
