#pragma once

// Parallel segmented search for Fibonacci-Wieferich primes and near misses.
//
// Workers sieve and test disjoint segments; a single collector merges results
// in ascending segment order, so the emitted stream is independent of the
// worker count. With a checkpoint path, the collector rewrites the checkpoint
// (temp file + rename) after every completed segment and resumes from it.

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wallsun/sieve.hpp"
#include "wallsun/wieferich.hpp"

namespace wallsun {

struct SampleRate {
  u64 num = 1;
  u64 den = 256;
};

struct ScanConfig {
  u64 range_start = 7;
  u64 range_end = 7;
  u64 threshold = kDefaultNearMissThreshold;
  u64 segment_size = u64{1} << 18;
  unsigned worker_count = 1;
  std::optional<std::filesystem::path> checkpoint_path;
  SampleRate cross_check_sample_rate;
  u64 seed = 0;
  // Stop (as if killed) after this many segments of the current run. The
  // checkpoint is left exactly as an interrupted run would leave it.
  std::optional<std::size_t> stop_after_segments;
};

struct ScanSummary {
  u64 range_start = 0;
  u64 range_end = 0;
  u64 threshold = 0;
  u64 primes_tested = 0;
  u64 near_misses = 0;
  u64 fw_found = 0;
  std::optional<u64> min_abs_k;
  u64 cross_checked = 0;
  double elapsed_seconds = 0.0;
  bool complete = false;
  std::optional<u64> completed_through;
};

inline void validate(const ScanConfig& cfg) {
  if (cfg.range_start < 7) throw ConfigInvalid("scan range must start at 7 or above (2, 3, 5 are handled separately)");
  if (cfg.segment_size == 0) throw ConfigInvalid("segment size must be positive");
  if (cfg.worker_count == 0) throw ConfigInvalid("worker count must be positive");
  if (cfg.cross_check_sample_rate.den == 0 || cfg.cross_check_sample_rate.num > cfg.cross_check_sample_rate.den) {
    throw ConfigInvalid("cross-check sample rate must lie in [0, 1]");
  }
  if (cfg.range_end >= (u64{1} << 62)) throw ConfigInvalid("scan range end too large");
}

inline bool sampled_for_cross_check(u64 p, const ScanConfig& cfg) {
  const auto& rate = cfg.cross_check_sample_rate;
  if (rate.num == 0) return false;
  return splitmix64(p ^ splitmix64(cfg.seed)) % rate.den < rate.num;
}

struct SegmentResult {
  u64 primes_tested = 0;
  u64 near_misses = 0;
  u64 fw_found = 0;
  std::optional<u64> min_abs_k;
  u64 cross_checked = 0;
  std::vector<FwRecord> records;
};

inline SegmentResult process_segment(const PrimeSegments& segments, std::size_t index, const ScanConfig& cfg) {
  SegmentResult out;
  for (u64 p : segments.primes(index)) {
    if (p == 5) continue;
    KValue kv = fw_k_value(p);
    u64 abs_k = kv.k < 0 ? static_cast<u64>(-kv.k) : static_cast<u64>(kv.k);
    ++out.primes_tested;
    if (!out.min_abs_k || abs_k < *out.min_abs_k) out.min_abs_k = abs_k;
    bool emit = abs_k <= cfg.threshold;
    if (!emit && !sampled_for_cross_check(p, cfg)) continue;
    AlphaCriterion ac = alpha_criterion(p);
    ++out.cross_checked;
    if ((kv.k == 0) != ac.is_fw) throw SanityViolation("FW criteria disagree at p = " + std::to_string(p));
    if (!norm_constraint_holds(ac, p)) throw SanityViolation("norm constraint fails at p = " + std::to_string(p));
    if (emit) {
      FwRecord r = make_record(p, kv, ac, cfg.threshold);
      out.near_misses += 1;
      out.fw_found += r.is_fw ? 1 : 0;
      out.records.push_back(r);
    }
  }
  return out;
}

namespace detail {

inline constexpr const char* kCheckpointMagic = "wallsun-scan-checkpoint v1";

struct CheckpointState {
  ScanSummary summary;
  std::vector<FwRecord> records;
};

inline void write_checkpoint(const std::filesystem::path& path, const ScanConfig& cfg, const CheckpointState& st) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp.string());
    const ScanSummary& s = st.summary;
    out << kCheckpointMagic << '\n';
    out << "range=" << cfg.range_start << ',' << cfg.range_end << '\n';
    out << "threshold=" << cfg.threshold << '\n';
    out << "segment_size=" << cfg.segment_size << '\n';
    out << "completed_through=" << (s.completed_through ? std::to_string(*s.completed_through) : "none") << '\n';
    out << "primes_tested=" << s.primes_tested << '\n';
    out << "near_misses=" << s.near_misses << '\n';
    out << "fw_found=" << s.fw_found << '\n';
    out << "min_abs_k=" << (s.min_abs_k ? std::to_string(*s.min_abs_k) : "none") << '\n';
    out << "cross_checked=" << s.cross_checked << '\n';
    std::ostringstream el;
    el.precision(17);
    el << s.elapsed_seconds;
    out << "elapsed_seconds=" << el.str() << '\n';
    out << fw_csv_header() << '\n';
    for (const auto& r : st.records) out << to_csv(r) << '\n';
    out.flush();
    if (!out) throw Error("failed writing checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline u64 parse_u64(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw CheckpointCorrupt("checkpoint field " + what + " is not an unsigned integer: '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw CheckpointCorrupt("checkpoint field " + what + " out of range");
  }
}

inline i64 parse_i64(const std::string& s, const std::string& what) {
  if (!s.empty() && s[0] == '-') return -static_cast<i64>(parse_u64(s.substr(1), what));
  return static_cast<i64>(parse_u64(s, what));
}

inline std::optional<u64> parse_opt_u64(const std::string& s, const std::string& what) {
  if (s == "none") return std::nullopt;
  return parse_u64(s, what);
}

inline FwRecord parse_row(const std::string& line) {
  std::vector<std::string> cols;
  std::stringstream ss(line);
  std::string c;
  while (std::getline(ss, c, ',')) cols.push_back(c);
  if (cols.size() != 7) throw CheckpointCorrupt("checkpoint row has wrong column count: " + line);
  FwRecord r;
  r.p = parse_u64(cols[0], "p");
  r.epsilon = static_cast<int>(parse_i64(cols[1], "epsilon"));
  r.k = parse_i64(cols[2], "k");
  r.a = parse_u64(cols[3], "a");
  r.b = parse_u64(cols[4], "b");
  auto flag = [&](const std::string& v) {
    if (v != "0" && v != "1") throw CheckpointCorrupt("checkpoint flag must be 0/1: " + line);
    return v == "1";
  };
  r.is_fw = flag(cols[5]);
  r.is_near_miss = flag(cols[6]);
  if (r.epsilon != 1 && r.epsilon != -1) throw CheckpointCorrupt("checkpoint epsilon must be ±1: " + line);
  return r;
}

inline CheckpointState read_checkpoint(const std::filesystem::path& path, const ScanConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw CheckpointCorrupt("cannot open checkpoint " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCheckpointMagic) throw CheckpointCorrupt("checkpoint header missing");
  std::map<std::string, std::string> kv;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    if (line == fw_csv_header()) {
      saw_columns = true;
      break;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw CheckpointCorrupt("malformed checkpoint line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (!saw_columns) throw CheckpointCorrupt("checkpoint lacks the record header");
  auto field = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw CheckpointCorrupt(std::string("checkpoint lacks ") + key);
    return it->second;
  };
  std::string expected_range = std::to_string(cfg.range_start) + ',' + std::to_string(cfg.range_end);
  if (field("range") != expected_range || parse_u64(field("threshold"), "threshold") != cfg.threshold ||
      parse_u64(field("segment_size"), "segment_size") != cfg.segment_size) {
    throw CheckpointCorrupt("checkpoint was written by a scan with a different range, threshold or segment size");
  }
  CheckpointState st;
  ScanSummary& s = st.summary;
  s.range_start = cfg.range_start;
  s.range_end = cfg.range_end;
  s.threshold = cfg.threshold;
  s.completed_through = parse_opt_u64(field("completed_through"), "completed_through");
  s.primes_tested = parse_u64(field("primes_tested"), "primes_tested");
  s.near_misses = parse_u64(field("near_misses"), "near_misses");
  s.fw_found = parse_u64(field("fw_found"), "fw_found");
  s.min_abs_k = parse_opt_u64(field("min_abs_k"), "min_abs_k");
  s.cross_checked = parse_u64(field("cross_checked"), "cross_checked");
  try {
    s.elapsed_seconds = std::stod(field("elapsed_seconds"));
  } catch (const std::exception&) {
    throw CheckpointCorrupt("checkpoint elapsed_seconds unreadable");
  }
  u64 fw = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    FwRecord r = parse_row(line);
    if (!st.records.empty() && r.p <= st.records.back().p) throw CheckpointCorrupt("checkpoint rows not ascending");
    if (r.p < cfg.range_start || !s.completed_through || r.p > *s.completed_through) {
      throw CheckpointCorrupt("checkpoint row outside the completed range");
    }
    fw += r.is_fw ? 1 : 0;
    st.records.push_back(r);
  }
  if (st.records.size() != s.near_misses || fw != s.fw_found) {
    throw CheckpointCorrupt("checkpoint row count disagrees with its counters");
  }
  return st;
}

inline void merge_into(ScanSummary& s, const SegmentResult& r) {
  s.primes_tested += r.primes_tested;
  s.near_misses += r.near_misses;
  s.fw_found += r.fw_found;
  s.cross_checked += r.cross_checked;
  if (r.min_abs_k && (!s.min_abs_k || *r.min_abs_k < *s.min_abs_k)) s.min_abs_k = r.min_abs_k;
}

}  // namespace detail

using RecordSink = std::function<void(const FwRecord&)>;

inline ScanSummary scan(const ScanConfig& cfg, const RecordSink& sink) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  PrimeSegments segments(cfg.range_start, cfg.range_end, cfg.segment_size);

  detail::CheckpointState state;
  state.summary.range_start = cfg.range_start;
  state.summary.range_end = cfg.range_end;
  state.summary.threshold = cfg.threshold;
  std::size_t first = 0;
  double prior_elapsed = 0.0;

  if (cfg.checkpoint_path && std::filesystem::exists(*cfg.checkpoint_path)) {
    state = detail::read_checkpoint(*cfg.checkpoint_path, cfg);
    prior_elapsed = state.summary.elapsed_seconds;
    if (state.summary.completed_through) {
      u64 done = *state.summary.completed_through;
      if (segments.empty() || done < segments.lo() || done > segments.hi()) {
        throw CheckpointCorrupt("checkpoint completed_through lies outside the scan range");
      }
      if (done == segments.hi()) {
        first = segments.segment_count();
      } else {
        u64 next = done + 1;
        if ((next - segments.lo()) % cfg.segment_size != 0) {
          throw CheckpointCorrupt("checkpoint completed_through is not a segment boundary");
        }
        first = static_cast<std::size_t>((next - segments.lo()) / cfg.segment_size);
      }
    }
    for (const auto& r : state.records) sink(r);
  }

  const std::size_t count = segments.segment_count();
  std::size_t stop = count;
  if (cfg.stop_after_segments) stop = std::min(count, first + *cfg.stop_after_segments);

  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, SegmentResult> finished;
  std::size_t next_take = first;
  std::size_t next_emit = first;
  bool abort = false;
  std::exception_ptr worker_error;
  const std::size_t window = 2 * static_cast<std::size_t>(cfg.worker_count) + 1;

  auto worker = [&] {
    for (;;) {
      std::size_t index;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return abort || next_take >= stop || next_take < next_emit + window; });
        if (abort || next_take >= stop) return;
        index = next_take++;
      }
      try {
        SegmentResult r = process_segment(segments, index, cfg);
        std::lock_guard lock(mu);
        finished.emplace(index, std::move(r));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!worker_error) worker_error = std::current_exception();
        abort = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(cfg.worker_count, std::max<std::size_t>(stop - first, 1)));
  for (unsigned i = 0; i < n_workers && first < stop; ++i) pool.emplace_back(worker);

  auto shutdown = [&] {
    {
      std::lock_guard lock(mu);
      abort = true;
    }
    cv.notify_all();
    for (auto& t : pool) t.join();
    pool.clear();
  };

  try {
    while (next_emit < stop) {
      SegmentResult r;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return abort || finished.count(next_emit) != 0; });
        if (finished.count(next_emit) == 0) break;  // aborted by a worker error
        r = std::move(finished.at(next_emit));
        finished.erase(next_emit);
      }
      for (const auto& rec : r.records) sink(rec);
      detail::merge_into(state.summary, r);
      state.records.insert(state.records.end(), r.records.begin(), r.records.end());
      state.summary.completed_through = segments.segment_end(next_emit);
      {
        std::lock_guard lock(mu);
        ++next_emit;
      }
      cv.notify_all();
      if (cfg.checkpoint_path) {
        state.summary.elapsed_seconds =
            prior_elapsed + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        detail::write_checkpoint(*cfg.checkpoint_path, cfg, state);
      }
    }
  } catch (...) {
    shutdown();
    throw;
  }
  shutdown();
  if (worker_error) std::rethrow_exception(worker_error);

  ScanSummary out = state.summary;
  out.complete = next_emit >= count;
  out.elapsed_seconds = prior_elapsed + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

inline std::vector<FwRecord> scan_records(const ScanConfig& cfg, ScanSummary* summary = nullptr) {
  std::vector<FwRecord> out;
  ScanSummary s = scan(cfg, [&](const FwRecord& r) { out.push_back(r); });
  if (summary) *summary = s;
  return out;
}

}  // namespace wallsun
