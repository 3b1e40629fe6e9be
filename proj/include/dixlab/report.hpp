#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "geometry.hpp"
#include "limits.hpp"
#include "matrix_oracle.hpp"
#include "trace_lab.hpp"
#include "weight.hpp"
#include "zeta_lab.hpp"

namespace dixlab {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

using json = nlohmann::ordered_json;

namespace report {

// non-finite doubles become null
inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json num(cplx z) { return json{{"re", num(z.real())}, {"im", num(z.imag())}}; }

inline json limit(const LimitEstimate& e) {
  json pts = json::array();
  for (auto& [x, y] : e.checkpoints) pts.push_back(json::array({num(x), num(y)}));
  json j{{"verdict", to_string(e.verdict)},
         {"value", num(e.value())},
         {"extrapolated", e.extrapolated ? num(*e.extrapolated) : json(nullptr)},
         {"window_inf", num(e.window_inf)},
         {"window_sup", num(e.window_sup)},
         {"raw_inf", num(e.raw_inf)},
         {"raw_sup", num(e.raw_sup)},
         {"width", num(e.width())},
         {"tolerance", num(e.tolerance)},
         {"trailing", e.trailing},
         {"model", e.model},
         {"checkpoints", pts}};
  return j;
}

inline json limit(const ComplexLimit& c) {
  json j{{"verdict", to_string(c.verdict())}, {"value", num(c.value())}, {"re", limit(c.re)}};
  if (!c.is_real()) j["im"] = limit(c.im);
  return j;
}

inline json interval(const DixmierInterval& d) {
  return json{{"inf", num(d.inf)},       {"sup", num(d.sup)},
              {"im_inf", num(d.im_inf)}, {"im_sup", num(d.im_sup)},
              {"width", num(d.width())}, {"cesaro_level", d.cesaro_level}};
}

inline json trace(const TraceReport& r) {
  json blocks = json::array();
  const std::size_t shown = std::min<std::size_t>(r.dyadic_profile.normalized.size(), 64);
  for (std::size_t n = 0; n < shown; ++n) blocks.push_back(num(r.dyadic_profile.normalized[n]));
  return json{{"sequence", r.sequence},
              {"weight", r.weight.descriptor},
              {"measurable", to_string(r.measurable)},
              {"value", r.value ? num(*r.value) : json(nullptr)},
              {"partial_sums", limit(r.partial_sum_estimate)},
              {"interval", interval(r.interval)},
              {"dyadic_source", r.dyadic_profile.source},
              {"normalized_blocks", blocks},
              {"warnings", r.warnings}};
}

inline json zeta_samples(const std::vector<ZetaSample>& s) {
  json a = json::array();
  for (auto& z : s)
    a.push_back(json{{"t", num(z.t)},
                     {"raw", num(z.raw)},
                     {"normalized", num(z.normalized)},
                     {"tail_bound", num(z.tail_bound)},
                     {"terms", z.terms},
                     {"tail", to_string(z.tail)}});
  return a;
}

inline json residue(const ResidueReport& r) { return json{{"estimate", limit(r.estimate)}, {"samples", zeta_samples(r.samples)}}; }

inline json abel(const AbelScan& s) {
  json a = json::array();
  for (auto& x : s.samples)
    a.push_back(json{{"r", num(x.r)}, {"value", num(x.value)}, {"bound", num(x.bound)}, {"blocks", x.blocks}});
  json sk = json::array();
  for (double r : s.skipped) sk.push_back(num(r));
  return json{{"estimate", limit(s.estimate)}, {"samples", a}, {"skipped", sk}};
}

inline json criterion(const CriterionResult& c) {
  json j{{"ran", c.ran},
         {"verdict", to_string(c.verdict)},
         {"raw_value", num(c.raw_value)},
         {"scale", num(c.scale)},
         {"scaled_value", num(c.scaled_value)}};
  if (c.estimate) j["estimate"] = limit(*c.estimate);
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

inline json equivalence(const EquivalenceReport& r) {
  return json{{"k", r.k},
              {"consistent", r.consistent},
              {"contradiction", r.contradiction},
              {"partial_sum", criterion(r.partial_sum)},
              {"abel", criterion(r.abel)},
              {"zeta", criterion(r.zeta)},
              {"notes", r.notes}};
}

inline json string_zeta(const StringZeta& z) {
  json j{{"value", num(z.value)}, {"tail_bound", num(z.tail_bound)}, {"method", z.method}};
  if (z.completed) j["completed"] = num(*z.completed);
  return j;
}

inline json counting(const CountingPartitionReport& r) {
  json p = json::array();
  for (auto& s : r.partition) p.push_back(json{{"t", num(s.t)}, {"partition", num(s.partition)}, {"ratio", num(s.ratio)}});
  json z = json::array();
  for (auto& s : r.zeta) z.push_back(json{{"s", num(s.s)}, {"zeta", num(s.zeta)}, {"normalized", num(s.normalized)}});
  return json{{"source", r.source},
              {"n", r.n},
              {"C_n", num(r.C)},
              {"c_n", num(r.c_n)},
              {"direct_terms", r.direct_terms},
              {"monotone", r.monotone},
              {"partition", p},
              {"partition_limit", limit(r.partition_limit)},
              {"partition_ok", r.partition_ok},
              {"zeta", z},
              {"zeta_limit", limit(r.zeta_limit)},
              {"zeta_ok", r.zeta_ok}};
}

inline json weyl(const WeylFuzzReport& r) {
  return json{{"instances", r.instances},
              {"violations", r.violations},
              {"violating_seeds", r.violating_seeds},
              {"orders", r.orders}};
}

inline json invariants(const std::string& name, const WeightInvariants& w) {
  return json{{"weight", name},
              {"x", num(w.x)},
              {"cond1", num(w.cond1)},
              {"cond02", num(w.cond02)},
              {"gexp", json::array({num(w.gexp[0]), num(w.gexp[1]), num(w.gexp[2])})},
              {"worst", num(w.worst)},
              {"passed", w.passed}};
}

// common envelope of every report
inline json envelope(const std::string& command, const json& config, const json& result) {
  return json{{"schema", kSchemaVersion},
              {"tool", "dixlab"},
              {"version", kToolVersion},
              {"command", command},
              {"config", config},
              {"result", result}};
}

}  // namespace report
}  // namespace dixlab
