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

#include "molab/arith.hpp"

#include <cmath>
#include <string>

namespace molab {

SpfTable build_spf_sieve(std::uint64_t limit) {
  if (limit == 0 || limit > kMaxSieveLimit) {
    throw SizeError("sieve limit " + std::to_string(limit) + " outside [1, " +
                    std::to_string(kMaxSieveLimit) + "]");
  }
  SpfTable table;
  table.spf_.assign(limit + 1, 0);
  table.spf_[1] = 1;
  auto& spf = table.spf_;
  auto& primes = table.primes_;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (spf[n] == 0) {
      spf[n] = static_cast<std::uint32_t>(n);
      primes.push_back(static_cast<std::uint32_t>(n));
    }
    const std::uint32_t pn = spf[n];
    for (std::uint32_t p : primes) {
      if (p > pn || static_cast<std::uint64_t>(p) * n > limit) break;
      spf[static_cast<std::uint64_t>(p) * n] = p;
    }
  }
  return table;
}

Factorization factorize(std::uint64_t n, const SpfTable& table) {
  if (n == 0 || n > table.limit()) {
    throw RangeError("cannot factorize " + std::to_string(n) + " with a table up to " +
                     std::to_string(table.limit()));
  }
  Factorization out;
  out.n = n;
  while (n > 1) {
    const std::uint64_t p = table[n];
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.factors.push_back({p, k});
  }
  return out;
}

Complex eval_at(const MultiplicativeSpec& f, std::uint64_t n, const SpfTable& table) {
  const Factorization fac = factorize(n, table);
  Complex value(1.0, 0.0);
  for (const auto& [p, k] : fac.factors) value *= f.prime_power_value(p, k);
  return checked(value, "eval_at");
}

std::vector<Complex> sieve_values(const MultiplicativeSpec& f, std::uint64_t limit) {
  if (limit == 0 || limit > kMaxValueLimit) {
    throw SizeError("value table limit " + std::to_string(limit) + " outside [1, " +
                    std::to_string(kMaxValueLimit) + "]");
  }
  const SpfTable table = build_spf_sieve(limit);
  std::vector<Complex> values(limit + 1);
  // top_part[n] = the full power of the largest prime dividing n. Splitting it
  // off last reproduces the ascending-prime product order of eval_at exactly.
  std::vector<std::uint32_t> top_part(limit + 1, 1);
  std::vector<std::uint8_t> exponent(limit + 1, 0);  // valid where n is a prime power
  values[1] = Complex(1.0, 0.0);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const std::uint32_t p = table[n];
    const std::uint64_t m = n / p;
    if (m == 1) {
      top_part[n] = p;
      exponent[n] = 1;
    } else if (top_part[m] == m && m % p == 0) {
      top_part[n] = static_cast<std::uint32_t>(n);
      exponent[n] = static_cast<std::uint8_t>(exponent[m] + 1);
    } else {
      top_part[n] = top_part[m];
    }
    if (top_part[n] == n) {
      values[n] = f.prime_power_value(p, exponent[n]);
    } else {
      values[n] = values[n / top_part[n]] * values[top_part[n]];
    }
    if (!is_finite(values[n])) {
      throw OverflowError("non-finite value of " + f.name + " at n=" + std::to_string(n));
    }
  }
  return values;
}

SegmentedEvaluator::SegmentedEvaluator(const MultiplicativeSpec& f, std::uint64_t limit)
    : f_(f), limit_(limit) {
  if (limit == 0 || limit > kMaxStreamLimit) {
    throw SizeError("streaming limit " + std::to_string(limit) + " outside [1, " +
                    std::to_string(kMaxStreamLimit) + "]");
  }
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  if (root >= 2) {
    const SpfTable table = build_spf_sieve(root);
    small_primes_ = table.primes();
  }
  powers_.reserve(small_primes_.size());
  for (std::uint64_t p : small_primes_) {
    std::vector<Complex> row(1);
    std::uint64_t pk = p;
    for (int k = 1;; ++k) {
      row.push_back(f.prime_power_value(p, k));
      if (pk > limit / p) break;
      pk *= p;
    }
    powers_.push_back(std::move(row));
  }
}

void SegmentedEvaluator::fill(std::uint64_t lo, std::span<Complex> out) const {
  if (out.empty()) return;
  const std::uint64_t hi = lo + out.size() - 1;
  if (lo == 0 || hi > limit_) {
    throw RangeError("block [" + std::to_string(lo) + ", " + std::to_string(hi) +
                     "] outside [1, " + std::to_string(limit_) + "]");
  }
  std::vector<std::uint64_t> rest(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    rest[i] = lo + i;
    out[i] = Complex(1.0, 0.0);
  }
  for (std::size_t j = 0; j < small_primes_.size(); ++j) {
    const std::uint64_t p = small_primes_[j];
    const std::uint64_t first = (lo + p - 1) / p * p;
    for (std::uint64_t n = first; n <= hi; n += p) {
      std::uint64_t& r = rest[n - lo];
      int k = 0;
      do {
        r /= p;
        ++k;
      } while (r % p == 0);
      out[n - lo] *= powers_[j][k];
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (rest[i] > 1) out[i] *= f_.prime_power_value(rest[i], 1);
    if (!is_finite(out[i])) {
      throw OverflowError("non-finite value of " + f_.name + " at n=" + std::to_string(lo + i));
    }
  }
}

}  // namespace molab
