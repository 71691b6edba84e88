// Copyright 2026 The molab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "molab/report_io.hpp"

#include <cstdio>
#include <ostream>

namespace molab {

using nlohmann::json;

namespace {

json windows_json(const std::vector<SupWindow>& windows) {
  json out = json::array();
  for (const auto& w : windows) {
    out.push_back({{"window_lo", w.lo}, {"window_hi", w.hi}, {"sup", w.sup}, {"at_x", w.at_x}});
  }
  return out;
}

json growth_json(const std::vector<GrowthWindow>& windows) {
  json out = json::array();
  for (const auto& w : windows) out.push_back({{"lo", w.lo}, {"hi", w.hi}, {"increment", w.increment}});
  return out;
}

}  // namespace

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json envelope(const char* kind, json body) {
  json out = {{"schema_version", kSchemaVersion}, {"kind", kind}};
  out.update(body);
  return out;
}

json to_json(const EulerFactorReport& r) {
  return {{"p", r.p},
          {"value", complex_json(r.value)},
          {"K", r.depth},
          {"tail_bound", r.tail_bound},
          {"rounding_bound", r.rounding_bound},
          {"method", to_string(r.method)}};
}

json to_json(const ConditionIReport& r) {
  return {{"limit", r.limit},
          {"S_at_limit", complex_json(r.s_at_limit)},
          {"abs_S_at_limit", std::abs(r.s_at_limit)},
          {"fitted_decay_exponent", r.fitted_decay_exponent},
          {"fit_window", {r.fit_lo, r.fit_hi}},
          {"fit_points", r.fit_points},
          {"threshold", r.threshold},
          {"last_decade_min_abs", r.last_decade_min_abs},
          {"last_decade_spread", r.last_decade_spread},
          {"windows", windows_json(r.windows)},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const ConditionIIReport& r) {
  json out = {{"p_max", r.p_max},
              {"primes_checked", r.primes_checked},
              {"min_abs_factor", r.min_abs_factor},
              {"min_factor_prime", r.min_factor_prime},
              {"witness_prime", nullptr},
              {"complete_via_closed_form", r.complete_via_closed_form},
              {"verdict", to_string(r.verdict)}};
  if (r.witness_prime) out["witness_prime"] = *r.witness_prime;
  return out;
}

json to_json(const MoCheckReport& r) {
  return {{"function", r.function_name},
          {"threads", r.threads},
          {"condition_i", to_json(r.condition_i)},
          {"condition_ii", to_json(r.condition_ii)}};
}

json to_json(const DistanceReport& r) {
  json out = {{"p_max", r.p_max}, {"k_max", r.k_max}, {"lower_bound", r.lower_bound}, {"tail_bound", nullptr}};
  if (r.tail_bound) out["tail_bound"] = *r.tail_bound;
  return out;
}

json to_json(const AbsoluteConvergenceReport& r) {
  return {{"p_max", r.p_max},
          {"k_max", r.k_max},
          {"n_max", r.n_max},
          {"prime_power_sum", r.prime_power_sum},
          {"n_sum", r.n_sum},
          {"prime_windows", growth_json(r.prime_windows)},
          {"n_windows", growth_json(r.n_windows)},
          {"prime_divergent_trend", r.prime_divergent_trend},
          {"n_divergent_trend", r.n_divergent_trend}};
}

json to_json(const MultiplicativityVerdict& r) {
  json out = {{"limit", r.limit},
              {"pairs_checked", r.pairs_checked},
              {"multiplicative", r.multiplicative},
              {"counterexample", nullptr}};
  if (r.counterexample) out["counterexample"] = {{"m", r.counterexample->first}, {"n", r.counterexample->second}};
  return out;
}

json to_json(const LowerBoundCertificate& r) {
  return {{"min_abs_factor", r.min_abs_factor},
          {"at_prime", r.at_prime},
          {"at_s", complex_json(r.at_s)},
          {"points", r.points},
          {"positive", r.positive},
          {"label", "heuristic grid certificate"}};
}

json to_json(const TransferReport& r) {
  return {{"f_condition_i", to_json(r.f_condition_i)},
          {"f_condition_ii", to_json(r.f_condition_ii)},
          {"f_lower_bound", to_json(r.f_lower_bound)},
          {"g_condition_ii", to_json(r.g_condition_ii)},
          {"distance", r.distance},
          {"hypotheses_hold", r.violations.empty()},
          {"violations", r.violations},
          {"g_condition_i", to_json(r.g_condition_i)},
          {"prediction_confirmed", r.prediction_confirmed}};
}

json to_json(const ScanReport& r) {
  json weight = {{"kind", r.weight.kind == WeightKind::x_log_x       ? "x_log_x"
                          : r.weight.kind == WeightKind::x_loglog_sq ? "x_loglog_sq"
                                                                      : "x_pow"},
                 {"label", r.weight.label()}};
  if (r.weight.kind == WeightKind::x_pow) weight["c"] = r.weight.exponent;
  return {{"function", r.function_name},
          {"weight", weight},
          {"limit", r.limit},
          {"x_min", r.x_min},
          {"threads", r.threads},
          {"windows", windows_json(r.windows)},
          {"global_inf_of_window_sups", r.global_inf_of_window_sups}};
}

json to_json(const ZetaZero& z) {
  return {{"index", z.index}, {"rho", complex_json(z.rho)}, {"residual", z.residual}};
}

json to_json(const CatalogEntry& e) {
  json params = json::object();
  for (const auto& [k, v] : e.parameters) params[k] = v;
  return {{"id", e.id}, {"name", e.spec.name}, {"parameters", params}, {"description", e.description}};
}

void write_scan_csv(std::ostream& out, const ScanReport& r) {
  out << "window_lo,window_hi,sup_weighted,at_x\n";
  char line[128];
  for (const auto& w : r.windows) {
    std::snprintf(line, sizeof line, "%llu,%llu,%.17g,%llu\n", static_cast<unsigned long long>(w.lo),
                  static_cast<unsigned long long>(w.hi), w.sup, static_cast<unsigned long long>(w.at_x));
    out << line;
  }
}

}  // namespace molab
