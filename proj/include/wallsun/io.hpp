#pragma once

// JSON and CSV renderings of the result types. Integers that may exceed 64
// bits (F_n, U_n, V_n, radicals, height coordinates) are JSON strings.
// Floating-point values use the same shortest round-trip text in both formats.

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "wallsun/abc_triples.hpp"
#include "wallsun/heuristics.hpp"
#include "wallsun/periods.hpp"
#include "wallsun/scan.hpp"
#include "wallsun/verify.hpp"
#include "wallsun/wieferich.hpp"

namespace wallsun {

using json = nlohmann::json;

inline std::string format_double(double v) { return json(v).dump(); }

inline json to_json(const FwRecord& r) {
  return {{"p", r.p},   {"epsilon", r.epsilon}, {"k", r.k},
          {"a", r.a},   {"b", r.b},             {"is_fw", r.is_fw},
          {"is_near_miss", r.is_near_miss}};
}

inline json to_json(const ScanSummary& s) {
  json j = {{"range", {s.range_start, s.range_end}},
            {"threshold", s.threshold},
            {"primes_tested", s.primes_tested},
            {"near_misses", s.near_misses},
            {"fw_found", s.fw_found},
            {"min_abs_k", nullptr},
            {"elapsed_seconds", s.elapsed_seconds},
            {"cross_checked", s.cross_checked},
            {"complete", s.complete}};
  if (s.min_abs_k) j["min_abs_k"] = *s.min_abs_k;
  return j;
}

inline json to_json(const PisanoProfile& p) {
  json factors = json::array();
  for (const auto& f : p.factors) {
    factors.push_back({{"p", f.p}, {"e", f.e}, {"pi", f.pi}, {"rank", f.rank}, {"lift_exponent", f.lift_exponent}});
  }
  json j = {{"m", p.m}, {"pi", p.pi}, {"rank", p.rank}, {"factors", factors}, {"factor_period_product", nullptr}};
  if (p.factor_period_product) j["factor_period_product"] = *p.factor_period_product;
  return j;
}

inline const char* pisano_csv_header() { return "m,pi,rank,factor_period_product,p,e,pi_pe,rank_pe,lift_exponent"; }

inline std::vector<std::string> to_csv_rows(const PisanoProfile& p) {
  std::vector<std::string> rows;
  std::string prod = p.factor_period_product ? std::to_string(*p.factor_period_product) : "";
  for (const auto& f : p.factors) {
    rows.push_back(std::to_string(p.m) + ',' + std::to_string(p.pi) + ',' + std::to_string(p.rank) + ',' + prod +
                   ',' + std::to_string(f.p) + ',' + std::to_string(f.e) + ',' + std::to_string(f.pi) + ',' +
                   std::to_string(f.rank) + ',' + std::to_string(f.lift_exponent));
  }
  return rows;
}

inline json to_json(const ComparisonReport& r) {
  return {{"range", {r.range_start, r.range_end}},
          {"threshold", r.threshold},
          {"model", to_string(r.model)},
          {"expected", r.expected},
          {"observed", r.observed},
          {"poisson_sigma", r.poisson_sigma},
          {"z_score", r.z_score},
          {"anomalous", r.anomalous},
          {"approximate", r.approximate}};
}

inline const char* comparison_csv_header() {
  return "lo,hi,threshold,model,expected,observed,poisson_sigma,z_score,anomalous,approximate";
}

inline std::string to_csv(const ComparisonReport& r) {
  return std::to_string(r.range_start) + ',' + std::to_string(r.range_end) + ',' + std::to_string(r.threshold) + ',' +
         to_string(r.model) + ',' + format_double(r.expected) + ',' + std::to_string(r.observed) + ',' +
         format_double(r.poisson_sigma) + ',' + format_double(r.z_score) + ',' + (r.anomalous ? "1" : "0") + ',' +
         (r.approximate ? "1" : "0");
}

inline json to_json(const AbcTripleReport& r) {
  return {{"n", r.n},
          {"f_n", r.f_n.str()},
          {"u_n", r.u_n.str()},
          {"v_n", r.v_n.str()},
          {"radical", r.radical.str()},
          {"height", {{"x", r.height.x().str()}, {"y", r.height.y().str()}}},
          {"log_height", r.log_height},
          {"log_radical", r.log_radical},
          {"quality", r.quality},
          {"height_ok", r.height_bound_ok},
          {"radical_ok", r.radical_bound_ok}};
}

inline const char* abc_csv_header() { return "n,f_n,u_n,v_n,log_height,log_radical,quality,height_ok,radical_ok"; }

inline std::string to_csv(const AbcTripleReport& r) {
  return std::to_string(r.n) + ',' + r.f_n.str() + ',' + r.u_n.str() + ',' + r.v_n.str() + ',' +
         format_double(r.log_height) + ',' + format_double(r.log_radical) + ',' + format_double(r.quality) + ',' +
         (r.height_bound_ok ? "1" : "0") + ',' + (r.radical_bound_ok ? "1" : "0");
}

inline json to_json(const VerifyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj = {{"name", c.name},
               {"checked", c.checked},
               {"violations", c.violations},
               {"skipped", c.skipped},
               {"first_counterexample", nullptr}};
    if (c.first_counterexample) cj["first_counterexample"] = *c.first_counterexample;
    checks.push_back(cj);
  }
  return {{"suite", r.suite}, {"bound", r.bound}, {"violations", r.violations()}, {"checks", checks}};
}

inline const char* verify_csv_header() { return "suite,bound,check,checked,violations,skipped,first_counterexample"; }

inline std::vector<std::string> to_csv_rows(const VerifyReport& r) {
  std::vector<std::string> rows;
  for (const auto& c : r.checks) {
    rows.push_back(r.suite + ',' + std::to_string(r.bound) + ',' + c.name + ',' + std::to_string(c.checked) + ',' +
                   std::to_string(c.violations) + ',' + std::to_string(c.skipped) + ',' +
                   c.first_counterexample.value_or(""));
  }
  return rows;
}

}  // namespace wallsun
