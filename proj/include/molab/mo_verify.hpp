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

#pragma once

// Numerical checks of the two defining conditions of an MO function
//   (i)  sum_{n>=1} f(n) = 0,
//   (ii) sum_{k>=0} f(p^k) != 0 for every prime p,
// together with certified Euler factors, absolute-convergence diagnostics,
// the extended metric D(f, g) = sum_p sum_k |g(p^k) - f(p^k)|, the
// closeness-transfer experiment and Omega-evidence scans of partial sums.
//
// Condition (i) can only be observed up to a finite limit, so every verdict
// here is evidence, not proof. Thresholds are fixed constants below.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "molab/arith.hpp"
#include "molab/types.hpp"

namespace molab {

// ---------------------------------------------------------------------------
// Euler factors

enum class EulerMethod { closed_form, truncated_geometric };

struct EulerFactorReport {
  std::uint64_t p = 0;
  Complex value;
  int depth = 0;            // K: terms k = 0..K were summed
  double tail_bound = 0.0;  // certified bound on |sum_{k>K} f(p^k)|
  /// Bound on the floating-point error of `value` itself.
  double rounding_bound = 0.0;
  EulerMethod method = EulerMethod::truncated_geometric;
};

inline constexpr double kDefaultTargetTail = 1e-13;
inline constexpr int kMaxEulerDepth = 1 << 20;

/// Truncated sum_{k=0}^{K} f(p^k) at the smallest K whose certified tail
/// |f(p^{K+1})| / (1 - r) is <= target_tail (or K = kMaxEulerDepth, in which
/// case tail_bound reports what was reached). Specs without a tail
/// certificate fall back to their closed form; UncertifiableError otherwise.
EulerFactorReport euler_factor(const MultiplicativeSpec& f, std::uint64_t p,
                               double target_tail = kDefaultTargetTail);

/// Closed-form Euler factor with tail_bound 0. UncertifiableError when the
/// spec has no closed form at p; DivergenceError from completely
/// multiplicative specs with |f(p)| >= 1.
EulerFactorReport euler_factor_closed(const MultiplicativeSpec& f, std::uint64_t p);

// ---------------------------------------------------------------------------
// Conditions (i) and (ii)

enum class ConditionIVerdict { consistent_with_zero, inconsistent, inconclusive };
enum class ConditionIIVerdict { holds_up_to_pmax, fails_at_witness, inconclusive };

/// consistent_with_zero: |S(limit)| <= 10 limit^-0.2 and fitted exponent > 0.
/// inconsistent: min |S| over the last decade >= 5 * spread of S there and
/// fitted exponent <= 0.02.
inline constexpr double kConsistentScale = 10.0;
inline constexpr double kConsistentPower = -0.2;
inline constexpr double kInconsistentSpreadFactor = 5.0;
inline constexpr double kInconsistentMaxExponent = 0.02;

struct SupWindow {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;  // inclusive, clipped at the limit
  double sup = 0.0;
  std::uint64_t at_x = 0;
};

struct ConditionIReport {
  std::uint64_t limit = 0;
  Complex s_at_limit;
  /// c in sup_window |S(x)| ~ x^-c, least squares on dyadic window suprema.
  double fitted_decay_exponent = 0.0;
  std::uint64_t fit_lo = 0;
  std::uint64_t fit_hi = 0;
  int fit_points = 0;
  double threshold = 0.0;            // 10 limit^-0.2
  double last_decade_min_abs = 0.0;  // min |S(x)|, limit/10 <= x <= limit
  double last_decade_spread = 0.0;   // hypot of the re and im ranges there
  std::vector<SupWindow> windows;    // dyadic suprema of |S(x)| over every x
  ConditionIVerdict verdict = ConditionIVerdict::inconclusive;
};

struct ConditionIOptions {
  /// Fit window; defaults to [sqrt(limit), limit], the upper half in log x.
  std::optional<std::uint64_t> fit_lo;
  std::optional<std::uint64_t> fit_hi;
  unsigned threads = 1;
};

/// PreconditionError when limit < 1000.
ConditionIReport check_condition_i(const MultiplicativeSpec& f, std::uint64_t limit,
                                   const ConditionIOptions& options = {});

struct ConditionIIReport {
  std::uint64_t p_max = 0;
  std::size_t primes_checked = 0;
  double min_abs_factor = 0.0;
  std::uint64_t min_factor_prime = 0;
  std::optional<std::uint64_t> witness_prime;
  /// The closed form of f shows every prime above p_max has a nonzero factor.
  bool complete_via_closed_form = false;
  ConditionIIVerdict verdict = ConditionIIVerdict::inconclusive;
};

/// A prime fails when |value| <= tail_bound + rounding_bound. It is only
/// inconclusive when that happens with a tail above target_tail.
ConditionIIReport check_condition_ii(const MultiplicativeSpec& f, std::uint64_t p_max,
                                     double target_tail = kDefaultTargetTail);

struct MoCheckReport {
  std::string function_name;
  ConditionIReport condition_i;
  ConditionIIReport condition_ii;
  unsigned threads = 1;
};

MoCheckReport mo_check(const MultiplicativeSpec& f, std::uint64_t limit, std::uint64_t p_max,
                       const ConditionIOptions& options = {});

// ---------------------------------------------------------------------------
// Absolute convergence

struct GrowthWindow {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  double increment = 0.0;
};

struct AbsoluteConvergenceReport {
  std::uint64_t p_max = 0;
  int k_max = 0;
  std::uint64_t n_max = 0;
  double prime_power_sum = 0.0;  // sum_{p<=p_max} sum_{1<=k<=k_max} |f(p^k)|
  double n_sum = 0.0;            // sum_{n<=n_max} |f(n)|
  std::vector<GrowthWindow> prime_windows;
  std::vector<GrowthWindow> n_windows;
  /// Last complete dyadic increment is >= half the increment three windows
  /// earlier (geometric decay would shrink it by far more).
  bool prime_divergent_trend = false;
  bool n_divergent_trend = false;
};

AbsoluteConvergenceReport absolute_convergence_diag(const MultiplicativeSpec& f, std::uint64_t p_max,
                                                    int k_max, std::uint64_t n_max);

// ---------------------------------------------------------------------------
// Brute-force multiplicativity

struct MultiplicativityVerdict {
  bool multiplicative = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> counterexample;  // (m, n), m < n
  std::uint64_t limit = 0;
  std::uint64_t pairs_checked = 0;
};

/// Checks values[mn] = values[m] values[n] for coprime m <= n, mn <= N, with
/// relative tolerance 1e-12; values[0] is ignored. Reports the first failure
/// in lexicographic (m, n) order. PreconditionError unless values[1] = 1.
MultiplicativityVerdict is_multiplicative_bruteforce(std::span<const Complex> values);

// ---------------------------------------------------------------------------
// Extended metric

struct DistanceReport {
  std::uint64_t p_max = 0;
  int k_max = 0;
  double lower_bound = 0.0;  // truncated double sum
  /// Certified bound on everything the truncation omits, when available.
  std::optional<double> tail_bound;
};

DistanceReport distance(const MultiplicativeSpec& f, const MultiplicativeSpec& g, std::uint64_t p_max,
                        int k_max);

struct MetricAxiomVerdict {
  bool identity = false;
  bool symmetry = false;
  bool triangle = false;
  bool holds() const { return identity && symmetry && triangle; }
};

/// Identity and symmetry exactly, triangle inequality with 1e-12 slack, all
/// on the truncation at (p_max, k_max).
MetricAxiomVerdict metric_axiom_check(const MultiplicativeSpec& f, const MultiplicativeSpec& g,
                                      const MultiplicativeSpec& h, std::uint64_t p_max, int k_max);

// ---------------------------------------------------------------------------
// Perturbation and closeness transfer

using Overrides = std::map<std::pair<std::uint64_t, int>, Complex>;

/// g equal to f except at the overridden prime powers. ValidationError for a
/// non-prime p, k < 1 or a non-finite value.
MultiplicativeSpec perturb(const MultiplicativeSpec& f, const Overrides& overrides);

/// D(f, perturb(f, overrides)), exactly: sum of |override - f(p^k)|.
double override_distance(const MultiplicativeSpec& f, const Overrides& overrides);

/// f twisted by p^{-ks}: the Euler factor becomes sum_k f(p^k) p^{-ks}.
MultiplicativeSpec twist(const MultiplicativeSpec& f, Complex s);

struct LowerBoundGrid {
  std::vector<double> sigmas{0.0, 0.25, 0.5, 1.0};
  int t_max = 50;  // t in {-t_max, ..., t_max}
  std::uint64_t p_max = 100;
};

/// Finite-grid look at inf |sum_k f(p^k) p^{-ks}| over Re s >= 0. A
/// heuristic certificate only: the true infimum runs over a half-plane.
struct LowerBoundCertificate {
  double min_abs_factor = 0.0;  // min over the grid of |value| - tail - rounding
  std::uint64_t at_prime = 0;
  Complex at_s;
  std::size_t points = 0;
  bool positive = false;
};

LowerBoundCertificate lower_bound_on_grid(const MultiplicativeSpec& f, const LowerBoundGrid& grid);

struct TransferOptions {
  std::uint64_t limit = 1'000'000;
  std::uint64_t p_max = 1000;  // for the condition (ii) checks
  LowerBoundGrid grid;
  ConditionIOptions condition_i;
};

struct TransferReport {
  ConditionIReport f_condition_i;
  ConditionIIReport f_condition_ii;
  ConditionIIReport g_condition_ii;
  LowerBoundCertificate f_lower_bound;
  double distance = 0.0;
  /// Failed hypotheses, empty when all hold.
  std::vector<std::string> violations;
  ConditionIReport g_condition_i;
  /// Hypotheses hold and g's partial sums look consistent with zero.
  bool prediction_confirmed = false;
};

TransferReport transfer_experiment(const MultiplicativeSpec& f, const Overrides& overrides,
                                   const TransferOptions& options = {});

// ---------------------------------------------------------------------------
// Omega-evidence scans

enum class WeightKind { x_log_x, x_loglog_sq, x_pow };

struct Weight {
  WeightKind kind = WeightKind::x_pow;
  double exponent = 1.0;  // for x_pow

  double operator()(double x) const;
  /// "xlogx", "xloglog2" or "pow:C".
  std::string label() const;
  /// Inverse of label(); ValidationError otherwise.
  static Weight parse(std::string_view text);
};

struct ScanReport {
  std::string function_name;
  Weight weight;
  std::uint64_t limit = 0;
  std::uint64_t x_min = 0;
  std::vector<SupWindow> windows;  // sup of w(x)|S(x)| over every x in the window
  double global_inf_of_window_sups = 0.0;
  unsigned threads = 1;
};

struct ScanOptions {
  std::uint64_t x_min = 4;
  unsigned threads = 1;
};

/// Consecutive dyadic windows [2^j, 2^{j+1}) covering [x_min, limit].
/// PreconditionError when limit < 10^4.
ScanReport omega_scan(const MultiplicativeSpec& f, std::uint64_t limit, Weight weight,
                      const ScanOptions& options = {});

std::string_view to_string(EulerMethod m);
std::string_view to_string(ConditionIVerdict v);
std::string_view to_string(ConditionIIVerdict v);

}  // namespace molab
