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

// Compensated summation, checkpointed partial sums S(x) = sum_{n<=x} f(n),
// Abel summation against counting functions A(x), and closed-form values of
// the eta and g_k series.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "molab/arith.hpp"
#include "molab/types.hpp"

namespace molab {

/// Neumaier (improved Kahan) accumulation, applied to re and im separately.
class CompensatedAccumulator {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  struct Lane {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
      const double t = sum + x;
      if (std::abs(sum) >= std::abs(x)) {
        comp += (sum - t) + x;
      } else {
        comp += (x - t) + sum;
      }
      sum = t;
    }
    double value() const { return sum + comp; }
  };
  Lane re_;
  Lane im_;
};

/// Compensated sum of `terms` in the given order. Throws OverflowError on a
/// non-finite term or intermediate.
Complex compensated_sum(std::span<const Complex> terms);

/// Geometric checkpoint spacing plus every power of ten plus the limit.
struct CheckpointPolicy {
  double ratio = 1.05;
  bool powers_of_ten = true;
};

std::vector<std::uint64_t> checkpoint_positions(std::uint64_t limit,
                                                const CheckpointPolicy& policy = {});

struct Checkpoint {
  std::uint64_t x;
  Complex sum;
};

struct PartialSumSeries {
  std::string function_name;
  std::uint64_t limit = 0;
  CheckpointPolicy policy;
  std::vector<Checkpoint> checkpoints;  // strictly increasing x, last at limit

  Complex final_sum() const { return checkpoints.back().sum; }
};

struct PartialSumOptions {
  CheckpointPolicy policy;
  /// Worker threads used to evaluate value blocks. Summation is always the
  /// sequential ascending-n compensated sum, so results do not depend on it.
  unsigned threads = 1;
  std::uint64_t block_size = 1 << 16;
  /// Called with (x, S(x)) for every 1 <= x <= limit, in order.
  std::function<void(std::uint64_t, Complex)> observer;
};

/// Streams f(1..limit) block by block and records S(x) at checkpoints.
PartialSumSeries partial_sums(const MultiplicativeSpec& f, std::uint64_t limit,
                              const PartialSumOptions& options = {});

/// Same accumulation over an explicit table (values[0] ignored).
PartialSumSeries partial_sums_of_values(const std::string& name,
                                        std::span<const Complex> values,
                                        const CheckpointPolicy& policy = {});

/// CSV with header `x,re,im`, 17 significant digits.
void write_checkpoints_csv(std::ostream& out, const PartialSumSeries& series);

/// Counting function A(x) = sum_{n<=x} a(n) of an integer-indexed sequence.
class StepFunctionA {
 public:
  /// a(1), ..., a(P) repeated with period P; A(x) in O(1) time and memory.
  static StepFunctionA periodic(std::vector<Complex> one_period);
  /// prefix[x] = A(x) for 0 <= x <= limit, prefix[0] = 0.
  static StepFunctionA tabulated(std::vector<Complex> prefix);

  Complex operator()(std::uint64_t x) const;
  /// Largest supported x; nullopt for periodic sequences.
  std::optional<std::uint64_t> limit() const;

 private:
  std::vector<Complex> prefix_;  // prefix_[r] = A(r), 0 <= r <= P (or limit)
  bool periodic_ = false;
};

StepFunctionA raw_counting_sums(const std::function<Complex(std::uint64_t)>& a,
                                std::uint64_t limit);
/// a(n) = (-1)^(n-1).
StepFunctionA alternating_counting();
/// a(n) = g_k(n): 1 - k when k | n, else 1.
StepFunctionA gk_counting(std::uint64_t k);

/// sum_{n<=x} a(n) n^(-alpha) computed as
/// sum_{n=1}^{x-1} A(n) (n^(-alpha) - (n+1)^(-alpha)) + A(x) x^(-alpha).
/// Requires Re(alpha) > 0.
Complex abel_weighted_sum(const StepFunctionA& counting, Complex alpha, std::uint64_t x);

using ZetaAccessor = std::function<Complex(Complex)>;

/// (1 - 2^(1-alpha)) zeta(alpha).
Complex closed_form_eta_series(Complex alpha, const ZetaAccessor& zeta_eval);
Complex closed_form_eta_series(Complex alpha);
/// (1 - k^(1-alpha)) zeta(alpha).
Complex closed_form_gk_series(std::uint64_t k, Complex alpha, const ZetaAccessor& zeta_eval);
Complex closed_form_gk_series(std::uint64_t k, Complex alpha);

}  // namespace molab
