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

// Prime sieving, factorization and evaluation of multiplicative functions
// from their values on prime powers.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "molab/types.hpp"

namespace molab {

/// Largest table accepted by build_spf_sieve (4 bytes per entry).
inline constexpr std::uint64_t kMaxSieveLimit = 500'000'000;
/// Largest limit accepted by sieve_values (about 21 bytes per entry).
inline constexpr std::uint64_t kMaxValueLimit = 100'000'000;
/// Largest limit for the streaming (segmented) evaluator.
inline constexpr std::uint64_t kMaxStreamLimit = 1'000'000'000'000;

/// Smallest-prime-factor table for 1..limit. spf[1] = 1 is a sentinel.
class SpfTable {
 public:
  std::uint64_t limit() const { return spf_.size() - 1; }
  std::uint32_t operator[](std::uint64_t n) const { return spf_[n]; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit() && spf_[n] == n; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

 private:
  friend SpfTable build_spf_sieve(std::uint64_t limit);
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Linear sieve, O(limit). Throws SizeError for limit = 0 or > kMaxSieveLimit.
SpfTable build_spf_sieve(std::uint64_t limit);

struct PrimePower {
  std::uint64_t p;
  int k;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes; empty iff n == 1
};

Factorization factorize(std::uint64_t n, const SpfTable& table);

/// Certificate |f(p^{k+1})| <= ratio * |f(p^k)| for every k >= from_k.
/// ratio lies in [0, 1); ratio 0 means f(p^k) = 0 for all k > from_k.
struct TailRule {
  double ratio = 0.0;
  int from_k = 1;
};

/// Closed form for the Euler factor sum_{k>=0} f(p^k). `factor` may decline
/// (nullopt) for individual primes. Every prime above `exceptional_bound` has
/// a factor that is provably nonzero.
struct ClosedEulerFactor {
  std::function<std::optional<Complex>(std::uint64_t p)> factor;
  std::uint64_t exceptional_bound = 1;
};

/// |f(p^k)| <= scale * p^(-decay*k) for 1 <= k <= depth and every prime
/// p > valid_above; f(p^k) = 0 for k > depth there. Two specs with the same
/// non-empty prime_value_key agree at every (p, 1) with p > valid_above.
struct PrimePowerEnvelope {
  double scale = 1.0;
  double decay = 0.0;
  int depth = 1 << 30;
  std::uint64_t valid_above = 1;
  std::string prime_value_key;
};

/// A multiplicative function given by its values on prime powers, with
/// f(1) = 1 by convention.
struct MultiplicativeSpec {
  std::string name;
  std::function<Complex(std::uint64_t p, int k)> prime_power_value;
  bool completely_multiplicative = false;
  /// Per-prime tail certificate; empty when none is known.
  std::function<TailRule(std::uint64_t p)> tail;
  std::optional<ClosedEulerFactor> closed_euler;
  std::optional<PrimePowerEnvelope> envelope;
  /// f(p^k) = 0 for every p above this bound.
  std::optional<std::uint64_t> prime_support;

  /// f(p^k) with the k = 0 convention f(1) = 1.
  Complex value(std::uint64_t p, int k) const {
    return k == 0 ? Complex(1.0, 0.0) : prime_power_value(p, k);
  }
};

/// f(n) as the ordered product of f(p^k) over the factorization of n.
Complex eval_at(const MultiplicativeSpec& f, std::uint64_t n, const SpfTable& table);

/// values[n] = f(n) for 1 <= n <= limit; values[0] is an unused zero slot.
/// Linear-sieve recurrence f(n) = f(p^k) f(m) with n = p^k m, p = spf(n).
std::vector<Complex> sieve_values(const MultiplicativeSpec& f, std::uint64_t limit);

/// Evaluates f on arbitrary blocks of [1, limit] using only primes up to
/// sqrt(limit), so memory stays O(sqrt(limit) + block). Values are
/// bit-identical to eval_at. `fill` is const and safe to call concurrently.
class SegmentedEvaluator {
 public:
  SegmentedEvaluator(const MultiplicativeSpec& f, std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  /// out[i] = f(lo + i) for i < out.size(); requires lo >= 1 and
  /// lo + out.size() - 1 <= limit.
  void fill(std::uint64_t lo, std::span<Complex> out) const;

 private:
  MultiplicativeSpec f_;
  std::uint64_t limit_;
  std::vector<std::uint32_t> small_primes_;
  // powers_[i][k] = f(small_primes_[i]^k), k >= 1; slot 0 unused.
  std::vector<std::vector<Complex>> powers_;
};

}  // namespace molab
