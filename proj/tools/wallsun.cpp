// wallsun: command-line front end for Pisano periods, Fibonacci-Wieferich
// searches, heuristic counts and Fibonacci abc-triples.
//
// Exit codes: 0 success, 2 usage or input error, 3 work budget exhausted
// (incomplete factorization), 4 sanity violation (never silent), 1 other.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "wallsun/io.hpp"
#include "wallsun/wallsun.hpp"

namespace {

using namespace wallsun;

enum ExitCode { kOk = 0, kOther = 1, kUsage = 2, kBudget = 3, kSanity = 4 };

struct Globals {
  std::string format;
  std::string out_path;
  u64 seed = 0;
  unsigned threads = 0;
};

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("WALLSUN_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw InvalidArgument(std::string("WALLSUN_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string format_or(const Globals& g, const char* fallback) { return g.format.empty() ? fallback : g.format; }

SampleRate parse_rate(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      double v = std::stod(s);
      if (v < 0 || v > 1) throw ConfigInvalid("sample rate must lie in [0, 1]");
      return {static_cast<u64>(v * 1'000'000 + 0.5), 1'000'000};
    }
    return {std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1))};
  } catch (const std::logic_error&) {
    throw ConfigInvalid("cannot parse sample rate '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pisano periods, Fibonacci-Wieferich prime search and Fibonacci abc-triples"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out_path, "Write output here instead of stdout");
  app.add_option("--seed", g.seed, "Seed for randomized internals (Pollard rho, sampling)");
  app.add_option("--threads", g.threads, "Worker threads (overrides WALLSUN_THREADS)");

  u64 modulus = 0;
  auto* pisano_cmd = app.add_subcommand("pisano", "Pisano period pi(m) with its prime-power profile");
  pisano_cmd->add_option("m", modulus, "Modulus (>= 2)")->required();

  auto* rank_cmd = app.add_subcommand("rank", "Rank of apparition l(m)");
  rank_cmd->add_option("m", modulus, "Modulus (>= 2)")->required();

  u64 prime = 0;
  u64 threshold = kDefaultNearMissThreshold;
  auto* fw_cmd = app.add_subcommand("fwtest", "Fibonacci-Wieferich test of one prime");
  fw_cmd->add_option("p", prime, "Prime, not 2 or 5")->required();
  fw_cmd->add_option("--threshold", threshold, "Near-miss bound on |k|");

  u64 from = 0, to = 0;
  u64 segment_size = u64{1} << 18;
  std::string checkpoint, summary_path, sample_rate = "1/256";
  std::optional<std::size_t> stop_after;
  auto* scan_cmd = app.add_subcommand("scan", "Scan a prime range for FW primes and near misses");
  scan_cmd->add_option("--from", from, "Range start (>= 7)")->required();
  scan_cmd->add_option("--to", to, "Range end (inclusive)")->required();
  scan_cmd->add_option("--threshold", threshold, "Near-miss bound on |k|");
  scan_cmd->add_option("--segment-size", segment_size, "Sieve segment length");
  scan_cmd->add_option("--checkpoint", checkpoint, "Checkpoint file (resumed if present)");
  scan_cmd->add_option("--summary", summary_path, "Write the JSON summary here (csv format; default stderr)");
  scan_cmd->add_option("--sample-rate", sample_rate, "Fraction of primes cross-checked with the alpha criterion");
  scan_cmd->add_option("--stop-after-segments", stop_after, "Stop after this many segments (simulated kill)")
      ->group("");

  std::string model_name = "all";
  auto* heur_cmd = app.add_subcommand("heuristic", "Expected FW prime counts under each heuristic model");
  heur_cmd->add_option("--from", from, "Range start (>= 7)")->required();
  heur_cmd->add_option("--to", to, "Range end (inclusive)")->required();
  heur_cmd->add_option("--model", model_name, "cdp | klaska | norm | all");

  std::string nm_model = "cdp";
  auto* nm_cmd = app.add_subcommand("nearmiss-report", "Scan a range and compare observed near misses to the model");
  nm_cmd->add_option("--from", from, "Range start (>= 7)")->required();
  nm_cmd->add_option("--to", to, "Range end (inclusive)")->required();
  nm_cmd->add_option("--threshold", threshold, "Near-miss bound on |k|");
  nm_cmd->add_option("--model", nm_model, "cdp | klaska | norm");
  nm_cmd->add_option("--segment-size", segment_size, "Sieve segment length");

  u64 index = 0;
  u64 budget = kDefaultRhoBudget;
  auto* abc_cmd = app.add_subcommand("abc-triple", "Height, radical and quality of (sqrt5 F_n, -alpha^n, alphabar^n)");
  abc_cmd->add_option("n", index, "Index n >= 1")->required();
  abc_cmd->add_option("--budget", budget, "Pollard rho iteration budget");

  u64 max_n = 0;
  auto* table_cmd = app.add_subcommand("abc-table", "abc-triple reports for n = 1..N");
  table_cmd->add_option("--max-n", max_n, "Largest index")->required();
  table_cmd->add_option("--budget", budget, "Pollard rho iteration budget");

  std::string suite;
  u64 bound = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite");
  verify_cmd->add_option("--suite", suite, "wall | lemmas | criteria | norm | abc")
      ->required()
      ->check(CLI::IsMember({"wall", "lemmas", "criteria", "norm", "abc"}));
  verify_cmd->add_option("--bound", bound, "Range bound for the suite")->required();
  verify_cmd->add_option("--budget", budget, "Pollard rho iteration budget (abc suite)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Output out(g.out_path);
    std::ostream& os = out.stream();
    FactorBudget fb{budget, g.seed};

    if (*pisano_cmd) {
      PisanoProfile prof = pisano(modulus);
      if (format_or(g, "json") == "json") {
        os << to_json(prof).dump() << '\n';
      } else {
        os << pisano_csv_header() << '\n';
        for (const auto& row : to_csv_rows(prof)) os << row << '\n';
      }
      return kOk;
    }

    if (*rank_cmd) {
      u64 r = rank_of_apparition(modulus);
      if (format_or(g, "json") == "json") {
        os << json{{"m", modulus}, {"rank", r}}.dump() << '\n';
      } else {
        os << "m,rank\n" << modulus << ',' << r << '\n';
      }
      return kOk;
    }

    if (*fw_cmd) {
      if (!is_prime_u64(prime)) throw InvalidArgument(std::to_string(prime) + " is not prime");
      FwRecord r = fw_test(prime, threshold);
      if (format_or(g, "csv") == "json") {
        os << to_json(r).dump() << '\n';
      } else {
        os << fw_csv_header() << '\n' << to_csv(r) << '\n';
      }
      return kOk;
    }

    if (*scan_cmd || *nm_cmd) {
      ScanConfig cfg;
      cfg.range_start = from;
      cfg.range_end = to;
      cfg.threshold = threshold;
      cfg.segment_size = segment_size;
      cfg.worker_count = resolve_threads(g.threads);
      cfg.seed = g.seed;
      cfg.cross_check_sample_rate = parse_rate(sample_rate);
      if (*scan_cmd) {
        if (!checkpoint.empty()) cfg.checkpoint_path = checkpoint;
        cfg.stop_after_segments = stop_after;
        const bool as_json = format_or(g, "csv") == "json";
        json records = json::array();
        if (!as_json) os << fw_csv_header() << '\n';
        ScanSummary s = scan(cfg, [&](const FwRecord& r) {
          if (as_json) {
            records.push_back(to_json(r));
          } else {
            os << to_csv(r) << '\n';
          }
        });
        if (as_json) {
          os << json{{"records", records}, {"summary", to_json(s)}}.dump() << '\n';
        } else if (!summary_path.empty()) {
          Output so(summary_path);
          so.stream() << to_json(s).dump() << '\n';
        } else {
          std::cerr << to_json(s).dump() << '\n';
        }
        return kOk;
      }
      ScanSummary s = scan(cfg, [](const FwRecord&) {});
      ComparisonReport rep = compare(s, parse_model(nm_model));
      if (format_or(g, "json") == "json") {
        os << to_json(rep).dump() << '\n';
      } else {
        os << comparison_csv_header() << '\n' << to_csv(rep) << '\n';
      }
      return kOk;
    }

    if (*heur_cmd) {
      std::vector<Model> models;
      if (model_name == "all") {
        models.assign(std::begin(kAllModels), std::end(kAllModels));
      } else {
        models.push_back(parse_model(model_name));
      }
      const bool as_json = format_or(g, "json") == "json";
      json arr = json::array();
      if (!as_json) os << "model,lo,hi,expected,approximate\n";
      for (Model m : models) {
        Expectation e = expected_fw_count(m, from, to);
        if (as_json) {
          arr.push_back({{"name", to_string(m)},
                         {"description", describe(m).description},
                         {"expected", e.value},
                         {"approximate", e.approximate}});
        } else {
          os << to_string(m) << ',' << from << ',' << to << ',' << format_double(e.value) << ','
             << (e.approximate ? 1 : 0) << '\n';
        }
      }
      if (as_json) os << json{{"range", {from, to}}, {"models", arr}}.dump() << '\n';
      return kOk;
    }

    if (*abc_cmd) {
      AbcTripleReport r = triple_report(index, fb);
      if (format_or(g, "json") == "json") {
        os << to_json(r).dump() << '\n';
      } else {
        os << abc_csv_header() << '\n' << to_csv(r) << '\n';
      }
      return kOk;
    }

    if (*table_cmd) {
      const bool as_json = format_or(g, "csv") == "json";
      json arr = json::array();
      if (!as_json) os << abc_csv_header() << '\n';
      int incomplete = 0;
      for (u64 n = 1; n <= max_n; ++n) {
        try {
          AbcTripleReport r = triple_report(n, fb);
          if (as_json) {
            arr.push_back(to_json(r));
          } else {
            os << to_csv(r) << '\n';
          }
        } catch (const IncompleteFactorization& e) {
          std::cerr << "skipped n=" << n << ": " << e.what() << '\n';
          ++incomplete;
        }
      }
      if (as_json) os << arr.dump() << '\n';
      return incomplete > 0 ? kBudget : kOk;
    }

    if (*verify_cmd) {
      VerifyReport rep = run_suite(parse_suite(suite), bound, resolve_threads(g.threads), fb);
      if (format_or(g, "json") == "json") {
        os << to_json(rep).dump() << '\n';
      } else {
        os << verify_csv_header() << '\n';
        for (const auto& row : to_csv_rows(rep)) os << row << '\n';
      }
      return rep.violations() == 0 ? kOk : kSanity;
    }
  } catch (const SanityViolation& e) {
    std::cerr << "sanity violation: " << e.what() << '\n';
    return kSanity;
  } catch (const OrderNotDividing& e) {
    std::cerr << "sanity violation: " << e.what() << '\n';
    return kSanity;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CheckpointCorrupt& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
