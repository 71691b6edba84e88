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

#include "molab/mo_verify.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <set>

#include "molab/series.hpp"

namespace molab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  if (limit < 2) return {};
  return build_spf_sieve(limit).primes();
}

double real_compensated(const std::vector<double>& xs) {
  CompensatedAccumulator acc;
  for (double x : xs) acc.add(Complex(x, 0.0));
  return acc.value().real();
}

/// Dyadic suprema of weight(x) * |S(x)| for x >= x_min.
class DyadicSupTracker {
 public:
  DyadicSupTracker(std::uint64_t x_min, std::uint64_t limit, std::function<double(double)> weight)
      : x_min_(x_min), limit_(limit), weight_(std::move(weight)) {}

  void observe(std::uint64_t x, Complex s) {
    if (x < x_min_) return;
    const std::uint64_t lo = std::uint64_t{1} << (std::bit_width(x) - 1);
    if (windows_.empty() || windows_.back().lo != std::max(lo, x_min_)) {
      const std::uint64_t hi = std::min(limit_, 2 * lo - 1);
      windows_.push_back({std::max(lo, x_min_), hi, -1.0, 0});
    }
    const double v = weight_(static_cast<double>(x)) * std::abs(s);
    SupWindow& w = windows_.back();
    if (v > w.sup) {
      w.sup = v;
      w.at_x = x;
    }
  }

  std::vector<SupWindow> take() { return std::move(windows_); }

 private:
  std::uint64_t x_min_;
  std::uint64_t limit_;
  std::function<double(double)> weight_;
  std::vector<SupWindow> windows_;
};

struct DecayFit {
  double exponent = 0.0;
  int points = 0;
};

DecayFit fit_decay(const std::vector<SupWindow>& windows, std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& w : windows) {
    if (w.lo >= lo && w.lo <= hi && w.sup > 0.0) {
      pts.emplace_back(std::log(static_cast<double>(w.lo)), std::log(w.sup));
    }
  }
  DecayFit fit;
  fit.points = static_cast<int>(pts.size());
  if (pts.size() < 2) return fit;
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  fit.exponent = -sxy / sxx;
  return fit;
}

}  // namespace

std::string_view to_string(EulerMethod m) {
  return m == EulerMethod::closed_form ? "closed_form" : "truncated_geometric";
}

std::string_view to_string(ConditionIVerdict v) {
  switch (v) {
    case ConditionIVerdict::consistent_with_zero: return "consistent_with_zero";
    case ConditionIVerdict::inconsistent: return "inconsistent";
    case ConditionIVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(ConditionIIVerdict v) {
  switch (v) {
    case ConditionIIVerdict::holds_up_to_pmax: return "holds_up_to_pmax";
    case ConditionIIVerdict::fails_at_witness: return "fails_at_witness";
    case ConditionIIVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

// ---------------------------------------------------------------------------

EulerFactorReport euler_factor_closed(const MultiplicativeSpec& f, std::uint64_t p) {
  if (!is_prime_u64(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (!f.closed_euler) throw UncertifiableError(f.name + " has no closed-form Euler factor");
  const std::optional<Complex> v = f.closed_euler->factor(p);
  if (!v) throw UncertifiableError(f.name + " has no closed-form Euler factor at p=" + std::to_string(p));
  EulerFactorReport r;
  r.p = p;
  r.value = checked(*v, "euler_factor_closed");
  r.depth = 0;
  r.tail_bound = 0.0;
  // The closed forms are ratios of O(1) quantities.
  r.rounding_bound = 64.0 * kEps * std::max(1.0, std::abs(r.value));
  r.method = EulerMethod::closed_form;
  return r;
}

EulerFactorReport euler_factor(const MultiplicativeSpec& f, std::uint64_t p, double target_tail) {
  if (!(target_tail > 0.0)) throw DomainError("target tail must be positive");
  if (!is_prime_u64(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (!f.tail) {
    if (f.closed_euler) return euler_factor_closed(f, p);
    throw UncertifiableError(f.name + " has neither a tail certificate nor a closed form");
  }
  const TailRule rule = f.tail(p);
  if (!(rule.ratio >= 0.0 && rule.ratio < 1.0)) {
    if (f.closed_euler) return euler_factor_closed(f, p);
    throw UncertifiableError(f.name + ": tail ratio at p=" + std::to_string(p) + " is not in [0, 1)");
  }
  CompensatedAccumulator acc;
  acc.add(Complex(1.0, 0.0));
  double abs_sum = 1.0;
  int depth = 0;
  double tail = INFINITY;
  Complex next = f.value(p, 1);
  for (;;) {
    if (depth + 1 >= rule.from_k) {
      tail = std::abs(next) / (1.0 - rule.ratio);
      if (tail <= target_tail || depth >= kMaxEulerDepth) break;
    }
    if (depth >= kMaxEulerDepth) {
      throw UncertifiableError(f.name + ": tail certificate at p=" + std::to_string(p) +
                               " starts beyond the maximum depth");
    }
    acc.add(next);
    abs_sum += std::abs(next);
    ++depth;
    next = f.value(p, depth + 1);
  }
  EulerFactorReport r;
  r.p = p;
  r.value = checked(acc.value(), "euler_factor");
  r.depth = depth;
  r.tail_bound = tail;
  r.rounding_bound = 16.0 * kEps * (depth + 2) * abs_sum;
  r.method = EulerMethod::truncated_geometric;
  return r;
}

// ---------------------------------------------------------------------------

ConditionIReport check_condition_i(const MultiplicativeSpec& f, std::uint64_t limit,
                                   const ConditionIOptions& options) {
  if (limit < 1000) throw PreconditionError("condition (i) check needs limit >= 1000");
  ConditionIReport report;
  report.limit = limit;
  report.fit_lo = options.fit_lo.value_or(
      static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(limit)))));
  report.fit_hi = options.fit_hi.value_or(limit);
  report.threshold = kConsistentScale * std::pow(static_cast<double>(limit), kConsistentPower);

  DyadicSupTracker tracker(1, limit, [](double) { return 1.0; });
  const std::uint64_t decade_start = std::max<std::uint64_t>(1, limit / 10);
  double min_abs = INFINITY;
  double re_lo = INFINITY, re_hi = -INFINITY, im_lo = INFINITY, im_hi = -INFINITY;

  PartialSumOptions ps;
  ps.threads = options.threads;
  ps.observer = [&](std::uint64_t x, Complex s) {
    tracker.observe(x, s);
    if (x >= decade_start) {
      min_abs = std::min(min_abs, std::abs(s));
      re_lo = std::min(re_lo, s.real());
      re_hi = std::max(re_hi, s.real());
      im_lo = std::min(im_lo, s.imag());
      im_hi = std::max(im_hi, s.imag());
    }
  };
  const PartialSumSeries series = partial_sums(f, limit, ps);
  report.s_at_limit = series.final_sum();
  report.windows = tracker.take();
  report.last_decade_min_abs = min_abs;
  report.last_decade_spread = std::hypot(re_hi - re_lo, im_hi - im_lo);

  const DecayFit fit = fit_decay(report.windows, report.fit_lo, report.fit_hi);
  report.fitted_decay_exponent = fit.exponent;
  report.fit_points = fit.points;

  // A sum pinned away from 0 beats the loose threshold test.
  const bool pinned = report.last_decade_min_abs >= kInconsistentSpreadFactor * report.last_decade_spread &&
                      fit.exponent <= kInconsistentMaxExponent;
  if (fit.points >= 2 && pinned) {
    report.verdict = ConditionIVerdict::inconsistent;
  } else if (fit.points >= 2 && std::abs(report.s_at_limit) <= report.threshold && fit.exponent > 0.0) {
    report.verdict = ConditionIVerdict::consistent_with_zero;
  } else {
    report.verdict = ConditionIVerdict::inconclusive;
  }
  return report;
}

ConditionIIReport check_condition_ii(const MultiplicativeSpec& f, std::uint64_t p_max, double target_tail) {
  if (p_max < 2) throw PreconditionError("condition (ii) check needs p_max >= 2");
  ConditionIIReport report;
  report.p_max = p_max;
  report.min_abs_factor = INFINITY;
  bool undecided = false;
  for (std::uint64_t p : primes_up_to(p_max)) {
    const EulerFactorReport e = euler_factor(f, p, target_tail);
    ++report.primes_checked;
    const double a = std::abs(e.value);
    if (a < report.min_abs_factor) {
      report.min_abs_factor = a;
      report.min_factor_prime = p;
    }
    if (a <= e.tail_bound + e.rounding_bound) {
      if (e.tail_bound > target_tail) {
        undecided = true;
      } else if (!report.witness_prime) {
        report.witness_prime = p;
      }
    }
  }
  if (report.witness_prime) {
    report.verdict = ConditionIIVerdict::fails_at_witness;
  } else if (undecided) {
    report.verdict = ConditionIIVerdict::inconclusive;
  } else {
    report.verdict = ConditionIIVerdict::holds_up_to_pmax;
    report.complete_via_closed_form = f.closed_euler && p_max >= f.closed_euler->exceptional_bound;
  }
  return report;
}

MoCheckReport mo_check(const MultiplicativeSpec& f, std::uint64_t limit, std::uint64_t p_max,
                       const ConditionIOptions& options) {
  MoCheckReport r;
  r.function_name = f.name;
  r.threads = std::max(1u, options.threads);
  r.condition_i = check_condition_i(f, limit, options);
  r.condition_ii = check_condition_ii(f, p_max);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<GrowthWindow> dyadic_increments(const std::vector<std::pair<std::uint64_t, double>>& terms,
                                            std::uint64_t limit) {
  std::vector<GrowthWindow> out;
  for (const auto& [x, v] : terms) {
    const std::uint64_t lo = std::uint64_t{1} << (std::bit_width(x) - 1);
    if (out.empty() || out.back().lo != lo) out.push_back({lo, std::min(limit, 2 * lo - 1), 0.0});
    out.back().increment += v;
  }
  return out;
}

bool divergent_trend(const std::vector<GrowthWindow>& windows) {
  std::vector<double> full;
  for (const auto& w : windows) {
    if (w.hi == 2 * w.lo - 1) full.push_back(w.increment);
  }
  if (full.size() < 4) return false;
  const double last = full.back();
  const double earlier = full[full.size() - 4];
  if (earlier == 0.0) return last > 0.0;
  return last >= 0.5 * earlier;
}

}  // namespace

AbsoluteConvergenceReport absolute_convergence_diag(const MultiplicativeSpec& f, std::uint64_t p_max,
                                                    int k_max, std::uint64_t n_max) {
  if (p_max < 2 || k_max < 2 || n_max < 2) throw PreconditionError("diagnostic bounds must be >= 2");
  AbsoluteConvergenceReport r;
  r.p_max = p_max;
  r.k_max = k_max;
  r.n_max = n_max;

  std::vector<std::pair<std::uint64_t, double>> prime_terms;
  std::vector<double> flat;
  for (std::uint64_t p : primes_up_to(p_max)) {
    std::vector<double> per_p;
    for (int k = 1; k <= k_max; ++k) per_p.push_back(std::abs(f.value(p, k)));
    const double s = real_compensated(per_p);
    prime_terms.emplace_back(p, s);
    flat.push_back(s);
  }
  r.prime_power_sum = real_compensated(flat);
  r.prime_windows = dyadic_increments(prime_terms, p_max);

  const SegmentedEvaluator evaluator(f, n_max);
  CompensatedAccumulator total;
  // Aggregate per dyadic window directly to keep memory flat.
  std::vector<GrowthWindow> n_windows;
  CompensatedAccumulator window_acc;
  std::vector<Complex> block;
  for (std::uint64_t lo = 1; lo <= n_max; lo += block.size()) {
    block.resize(std::min<std::uint64_t>(1 << 16, n_max - lo + 1));
    evaluator.fill(lo, block);
    for (std::size_t i = 0; i < block.size(); ++i) {
      const std::uint64_t x = lo + i;
      const std::uint64_t wlo = std::uint64_t{1} << (std::bit_width(x) - 1);
      if (n_windows.empty() || n_windows.back().lo != wlo) {
        if (!n_windows.empty()) n_windows.back().increment = window_acc.value().real();
        window_acc = {};
        n_windows.push_back({wlo, std::min(n_max, 2 * wlo - 1), 0.0});
      }
      const double a = std::abs(block[i]);
      window_acc.add(Complex(a, 0.0));
      total.add(Complex(a, 0.0));
    }
  }
  n_windows.back().increment = window_acc.value().real();
  r.n_sum = total.value().real();
  r.n_windows = std::move(n_windows);
  r.prime_divergent_trend = divergent_trend(r.prime_windows);
  r.n_divergent_trend = divergent_trend(r.n_windows);
  return r;
}

// ---------------------------------------------------------------------------

MultiplicativityVerdict is_multiplicative_bruteforce(std::span<const Complex> values) {
  if (values.size() < 2) throw PreconditionError("value table must include n = 1");
  if (std::abs(values[1] - 1.0) > 1e-12) throw PreconditionError("multiplicative functions need f(1) = 1");
  MultiplicativityVerdict v;
  const std::uint64_t n_max = values.size() - 1;
  v.limit = n_max;
  for (std::uint64_t m = 1; m * m <= n_max; ++m) {
    for (std::uint64_t n = m; m * n <= n_max; ++n) {
      if (std::gcd(m, n) != 1) continue;
      ++v.pairs_checked;
      const Complex lhs = values[m * n];
      const Complex rhs = values[m] * values[n];
      const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      if (std::abs(lhs - rhs) > 1e-12 * scale) {
        v.multiplicative = false;
        v.counterexample = std::make_pair(m, n);
        return v;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

double truncated_distance(const MultiplicativeSpec& f, const MultiplicativeSpec& g,
                          const std::vector<std::uint32_t>& primes, int k_max) {
  CompensatedAccumulator acc;
  for (std::uint64_t p : primes) {
    for (int k = 1; k <= k_max; ++k) acc.add(Complex(std::abs(g.value(p, k) - f.value(p, k)), 0.0));
  }
  return acc.value().real();
}

bool truncations_agree(const MultiplicativeSpec& f, const MultiplicativeSpec& g,
                       const std::vector<std::uint32_t>& primes, int k_max) {
  for (std::uint64_t p : primes) {
    for (int k = 1; k <= k_max; ++k) {
      if (f.value(p, k) != g.value(p, k)) return false;
    }
  }
  return true;
}

// Bound on sum_{k > k_max} |h(p^k)| for p <= p_max, from tail certificates.
std::optional<double> depth_tail(const MultiplicativeSpec& h, const std::vector<std::uint32_t>& primes,
                                 int k_max) {
  if (!h.tail) return std::nullopt;
  CompensatedAccumulator acc;
  for (std::uint64_t p : primes) {
    const TailRule rule = h.tail(p);
    if (k_max + 1 < rule.from_k || !(rule.ratio >= 0.0 && rule.ratio < 1.0)) return std::nullopt;
    acc.add(Complex(std::abs(h.value(p, k_max + 1)) / (1.0 - rule.ratio), 0.0));
  }
  return acc.value().real();
}

// Bound on sum_{p > P} sum_{k >= 2} |h(p^k)| from an envelope.
std::optional<double> higher_power_tail(const PrimePowerEnvelope& env, double P) {
  if (env.depth < 2) return 0.0;
  const double s = env.decay;
  if (!(s > 0.5)) return std::nullopt;
  return env.scale * std::pow(P, 1.0 - 2.0 * s) / ((2.0 * s - 1.0) * (1.0 - std::pow(P, -s)));
}

std::optional<double> prime_tail(const MultiplicativeSpec& f, const MultiplicativeSpec& g,
                                 std::uint64_t p_max) {
  if (f.prime_support && g.prime_support && *f.prime_support <= p_max && *g.prime_support <= p_max) {
    return 0.0;
  }
  if (!f.envelope || !g.envelope) return std::nullopt;
  const auto& ef = *f.envelope;
  const auto& eg = *g.envelope;
  if (ef.prime_value_key.empty() || ef.prime_value_key != eg.prime_value_key) return std::nullopt;
  if (ef.valid_above > p_max || eg.valid_above > p_max) return std::nullopt;
  const auto tf = higher_power_tail(ef, static_cast<double>(p_max));
  const auto tg = higher_power_tail(eg, static_cast<double>(p_max));
  if (!tf || !tg) return std::nullopt;
  return *tf + *tg;
}

}  // namespace

DistanceReport distance(const MultiplicativeSpec& f, const MultiplicativeSpec& g, std::uint64_t p_max,
                        int k_max) {
  if (p_max < 2 || k_max < 1) throw PreconditionError("distance needs p_max >= 2 and k_max >= 1");
  const std::vector<std::uint32_t> primes = primes_up_to(p_max);
  DistanceReport r;
  r.p_max = p_max;
  r.k_max = k_max;
  r.lower_bound = truncated_distance(f, g, primes, k_max);
  const auto df = depth_tail(f, primes, k_max);
  const auto dg = depth_tail(g, primes, k_max);
  const auto pt = prime_tail(f, g, p_max);
  if (df && dg && pt) r.tail_bound = *df + *dg + *pt;
  return r;
}

MetricAxiomVerdict metric_axiom_check(const MultiplicativeSpec& f, const MultiplicativeSpec& g,
                                      const MultiplicativeSpec& h, std::uint64_t p_max, int k_max) {
  if (p_max < 2 || k_max < 1) throw PreconditionError("metric check needs p_max >= 2 and k_max >= 1");
  const std::vector<std::uint32_t> primes = primes_up_to(p_max);
  const MultiplicativeSpec* specs[3] = {&f, &g, &h};
  double d[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d[i][j] = truncated_distance(*specs[i], *specs[j], primes, k_max);
  }
  MetricAxiomVerdict v;
  v.identity = true;
  v.symmetry = true;
  v.triangle = true;
  for (int i = 0; i < 3; ++i) {
    if (d[i][i] != 0.0) v.identity = false;
    for (int j = 0; j < 3; ++j) {
      if (i != j && (d[i][j] == 0.0) != truncations_agree(*specs[i], *specs[j], primes, k_max)) {
        v.identity = false;
      }
      if (d[i][j] != d[j][i]) v.symmetry = false;
      for (int m = 0; m < 3; ++m) {
        if (d[i][m] > d[i][j] + d[j][m] + 1e-12) v.triangle = false;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

MultiplicativeSpec perturb(const MultiplicativeSpec& f, const Overrides& overrides) {
  if (overrides.empty()) return f;
  std::map<std::uint64_t, int> max_k;
  std::string label;
  for (const auto& [key, v] : overrides) {
    const auto [p, k] = key;
    if (!is_prime_u64(p)) throw ValidationError("override at p=" + std::to_string(p) + ": not a prime");
    if (k < 1) throw ValidationError("override at p=" + std::to_string(p) + ": exponent must be >= 1");
    if (!is_finite(v)) throw ValidationError("override at p=" + std::to_string(p) + ": value must be finite");
    max_k[p] = std::max(max_k[p], k);
    label += (label.empty() ? "" : ",") + std::to_string(p) + "^" + std::to_string(k);
  }
  const std::uint64_t max_p = max_k.rbegin()->first;

  MultiplicativeSpec g;
  g.name = f.name + " with overrides at {" + label + "}";
  g.completely_multiplicative = false;
  auto table = std::make_shared<const Overrides>(overrides);
  g.prime_power_value = [table, base = f.prime_power_value](std::uint64_t p, int k) {
    const auto it = table->find({p, k});
    return it == table->end() ? base(p, k) : it->second;
  };
  if (f.tail) {
    g.tail = [max_k, base = f.tail](std::uint64_t p) {
      TailRule rule = base(p);
      if (const auto it = max_k.find(p); it != max_k.end()) rule.from_k = std::max(rule.from_k, it->second + 1);
      return rule;
    };
  }
  if (f.closed_euler) {
    g.closed_euler = ClosedEulerFactor{
        [max_k, base = f.closed_euler->factor](std::uint64_t p) -> std::optional<Complex> {
          if (max_k.count(p)) return std::nullopt;
          return base(p);
        },
        std::max(f.closed_euler->exceptional_bound, max_p)};
  }
  if (f.envelope) {
    g.envelope = f.envelope;
    g.envelope->valid_above = std::max(g.envelope->valid_above, max_p);
  }
  if (f.prime_support) g.prime_support = std::max(*f.prime_support, max_p);
  return g;
}

double override_distance(const MultiplicativeSpec& f, const Overrides& overrides) {
  CompensatedAccumulator acc;
  for (const auto& [key, v] : overrides) acc.add(Complex(std::abs(v - f.value(key.first, key.second)), 0.0));
  return acc.value().real();
}

MultiplicativeSpec twist(const MultiplicativeSpec& f, Complex s) {
  if (s.real() < 0.0) throw DomainError("twist needs Re s >= 0");
  MultiplicativeSpec g;
  g.name = f.name + " * n^-(" + format_complex(s) + ")";
  g.completely_multiplicative = f.completely_multiplicative;
  g.prime_power_value = [s, base = f.prime_power_value](std::uint64_t p, int k) {
    return base(p, k) * pow_neg(static_cast<double>(p), s * static_cast<double>(k));
  };
  if (f.tail) {
    g.tail = [sigma = s.real(), base = f.tail](std::uint64_t p) {
      TailRule rule = base(p);
      rule.ratio *= std::pow(static_cast<double>(p), -sigma);
      return rule;
    };
  }
  g.prime_support = f.prime_support;
  return g;
}

LowerBoundCertificate lower_bound_on_grid(const MultiplicativeSpec& f, const LowerBoundGrid& grid) {
  LowerBoundCertificate c;
  c.min_abs_factor = INFINITY;
  const std::vector<std::uint32_t> primes = primes_up_to(grid.p_max);
  for (double sigma : grid.sigmas) {
    for (int t = -grid.t_max; t <= grid.t_max; ++t) {
      const Complex s(sigma, t);
      const MultiplicativeSpec g = twist(f, s);
      for (std::uint64_t p : primes) {
        const EulerFactorReport e = euler_factor(g, p);
        const double m = std::abs(e.value) - e.tail_bound - e.rounding_bound;
        ++c.points;
        if (m < c.min_abs_factor) {
          c.min_abs_factor = m;
          c.at_prime = p;
          c.at_s = s;
        }
      }
    }
  }
  c.positive = c.points > 0 && c.min_abs_factor > 0.0;
  return c;
}

TransferReport transfer_experiment(const MultiplicativeSpec& f, const Overrides& overrides,
                                   const TransferOptions& options) {
  TransferReport r;
  r.f_condition_i = check_condition_i(f, options.limit, options.condition_i);
  if (r.f_condition_i.verdict != ConditionIVerdict::consistent_with_zero) {
    r.violations.push_back("f: partial sums not consistent with a zero limit");
  }
  r.f_condition_ii = check_condition_ii(f, options.p_max);
  if (r.f_condition_ii.verdict != ConditionIIVerdict::holds_up_to_pmax) {
    r.violations.push_back("f: an Euler factor vanishes or is undecided up to p_max");
  }
  try {
    r.f_lower_bound = lower_bound_on_grid(f, options.grid);
    if (!r.f_lower_bound.positive) {
      r.violations.push_back("f: twisted Euler factors not bounded away from 0 on the grid");
    }
  } catch (const Error& e) {
    r.violations.push_back(std::string("f: lower-bound grid failed: ") + e.what());
  }

  const MultiplicativeSpec g = perturb(f, overrides);
  std::uint64_t p_max = options.p_max;
  for (const auto& [key, v] : overrides) p_max = std::max(p_max, key.first);
  try {
    r.g_condition_ii = check_condition_ii(g, p_max);
    if (r.g_condition_ii.verdict != ConditionIIVerdict::holds_up_to_pmax) {
      r.violations.push_back("g: an Euler factor vanishes or is undecided up to p_max");
    }
  } catch (const Error& e) {
    r.violations.push_back(std::string("g: condition (ii) check failed: ") + e.what());
  }
  r.distance = override_distance(f, overrides);
  r.g_condition_i = check_condition_i(g, options.limit, options.condition_i);
  r.prediction_confirmed =
      r.violations.empty() && r.g_condition_i.verdict == ConditionIVerdict::consistent_with_zero;
  return r;
}

// ---------------------------------------------------------------------------

double Weight::operator()(double x) const {
  switch (kind) {
    case WeightKind::x_log_x: return x * std::log(x);
    case WeightKind::x_loglog_sq: {
      const double ll = std::log(std::log(x));
      return x * ll * ll;
    }
    case WeightKind::x_pow: return std::pow(x, exponent);
  }
  return 0.0;
}

std::string Weight::label() const {
  switch (kind) {
    case WeightKind::x_log_x: return "xlogx";
    case WeightKind::x_loglog_sq: return "xloglog2";
    case WeightKind::x_pow: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "pow:%.17g", exponent);
      return buf;
    }
  }
  return "";
}

Weight Weight::parse(std::string_view text) {
  if (text == "xlogx") return {WeightKind::x_log_x, 0.0};
  if (text == "xloglog2") return {WeightKind::x_loglog_sq, 0.0};
  if (text.starts_with("pow:")) {
    const std::string_view num = text.substr(4);
    double c = 0.0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), c);
    if (res.ec == std::errc() && res.ptr == num.data() + num.size() && std::isfinite(c)) {
      return {WeightKind::x_pow, c};
    }
  }
  throw ValidationError("weight must be xlogx, xloglog2 or pow:C, got '" + std::string(text) + "'");
}

ScanReport omega_scan(const MultiplicativeSpec& f, std::uint64_t limit, Weight weight,
                      const ScanOptions& options) {
  if (limit < 10'000) throw PreconditionError("omega scan needs limit >= 10^4");
  if (options.x_min < 1 || options.x_min > limit) throw PreconditionError("scan needs 1 <= x_min <= limit");
  if (weight.kind == WeightKind::x_loglog_sq && options.x_min < 3) {
    throw PreconditionError("the loglog weight needs x_min >= 3");
  }
  ScanReport r;
  r.function_name = f.name;
  r.weight = weight;
  r.limit = limit;
  r.x_min = options.x_min;
  r.threads = std::max(1u, options.threads);
  DyadicSupTracker tracker(options.x_min, limit, [weight](double x) { return weight(x); });
  PartialSumOptions ps;
  ps.threads = options.threads;
  ps.observer = [&](std::uint64_t x, Complex s) { tracker.observe(x, s); };
  partial_sums(f, limit, ps);
  r.windows = tracker.take();
  r.global_inf_of_window_sups = INFINITY;
  for (const auto& w : r.windows) r.global_inf_of_window_sups = std::min(r.global_inf_of_window_sups, w.sup);
  return r;
}

}  // namespace molab
