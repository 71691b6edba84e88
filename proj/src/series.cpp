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

#include "molab/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "molab/zeta.hpp"

namespace molab {

Complex compensated_sum(std::span<const Complex> terms) {
  CompensatedAccumulator acc;
  for (const Complex& t : terms) {
    if (!is_finite(t)) throw OverflowError("non-finite term in compensated_sum");
    acc.add(t);
  }
  return checked(acc.value(), "compensated_sum");
}

std::vector<std::uint64_t> checkpoint_positions(std::uint64_t limit,
                                                const CheckpointPolicy& policy) {
  if (limit == 0) throw SizeError("partial sums need limit >= 1");
  if (!(policy.ratio > 1.0)) throw DomainError("checkpoint ratio must exceed 1");
  std::vector<std::uint64_t> xs;
  for (std::uint64_t x = 1; x < limit;) {
    xs.push_back(x);
    const auto next = static_cast<std::uint64_t>(std::floor(static_cast<double>(x) * policy.ratio));
    x = std::max(x + 1, next);
  }
  if (policy.powers_of_ten) {
    for (std::uint64_t p = 1; p <= limit; p *= 10) {
      xs.push_back(p);
      if (p > limit / 10) break;
    }
  }
  xs.push_back(limit);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

PartialSumSeries partial_sums(const MultiplicativeSpec& f, std::uint64_t limit,
                              const PartialSumOptions& options) {
  const std::vector<std::uint64_t> marks = checkpoint_positions(limit, options.policy);
  const SegmentedEvaluator evaluator(f, limit);
  const unsigned threads = std::max(1u, options.threads);
  const std::uint64_t block = std::max<std::uint64_t>(1, options.block_size);

  PartialSumSeries series{f.name, limit, options.policy, {}};
  series.checkpoints.reserve(marks.size());
  CompensatedAccumulator acc;
  auto next_mark = marks.begin();

  std::vector<std::vector<Complex>> buffers(threads);
  for (std::uint64_t lo = 1; lo <= limit;) {
    // Fill up to `threads` consecutive blocks, then consume them in order.
    std::vector<std::uint64_t> starts;
    for (unsigned t = 0; t < threads && lo <= limit; ++t) {
      const std::uint64_t len = std::min(block, limit - lo + 1);
      buffers[t].resize(len);
      starts.push_back(lo);
      lo += len;
    }
    if (starts.size() == 1) {
      evaluator.fill(starts[0], buffers[0]);
    } else {
      std::vector<std::jthread> workers;
      std::vector<std::exception_ptr> errors(starts.size());
      for (std::size_t t = 0; t < starts.size(); ++t) {
        workers.emplace_back([&, t] {
          try {
            evaluator.fill(starts[t], buffers[t]);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      workers.clear();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (std::size_t t = 0; t < starts.size(); ++t) {
      std::uint64_t x = starts[t];
      for (const Complex& v : buffers[t]) {
        acc.add(v);
        const Complex s = acc.value();
        if (!is_finite(s)) throw OverflowError("partial sum overflow at x=" + std::to_string(x));
        if (options.observer) options.observer(x, s);
        if (next_mark != marks.end() && *next_mark == x) {
          series.checkpoints.push_back({x, s});
          ++next_mark;
        }
        ++x;
      }
    }
  }
  return series;
}

PartialSumSeries partial_sums_of_values(const std::string& name, std::span<const Complex> values,
                                        const CheckpointPolicy& policy) {
  if (values.size() < 2) throw SizeError("value table must cover n = 1");
  const std::uint64_t limit = values.size() - 1;
  const std::vector<std::uint64_t> marks = checkpoint_positions(limit, policy);
  PartialSumSeries series{name, limit, policy, {}};
  CompensatedAccumulator acc;
  auto next_mark = marks.begin();
  for (std::uint64_t x = 1; x <= limit; ++x) {
    acc.add(values[x]);
    if (*next_mark == x) {
      series.checkpoints.push_back({x, checked(acc.value(), "partial_sums_of_values")});
      ++next_mark;
    }
  }
  return series;
}

void write_checkpoints_csv(std::ostream& out, const PartialSumSeries& series) {
  out << "x,re,im\n";
  char line[96];
  for (const auto& c : series.checkpoints) {
    std::snprintf(line, sizeof line, "%llu,%.17g,%.17g\n", static_cast<unsigned long long>(c.x),
                  c.sum.real(), c.sum.imag());
    out << line;
  }
}

StepFunctionA StepFunctionA::periodic(std::vector<Complex> one_period) {
  if (one_period.empty()) throw SizeError("period must be non-empty");
  StepFunctionA a;
  a.periodic_ = true;
  a.prefix_.assign(one_period.size() + 1, Complex{});
  for (std::size_t i = 0; i < one_period.size(); ++i) a.prefix_[i + 1] = a.prefix_[i] + one_period[i];
  return a;
}

StepFunctionA StepFunctionA::tabulated(std::vector<Complex> prefix) {
  if (prefix.empty() || prefix[0] != Complex{}) throw DomainError("counting function needs A(0) = 0");
  StepFunctionA a;
  a.prefix_ = std::move(prefix);
  return a;
}

Complex StepFunctionA::operator()(std::uint64_t x) const {
  if (periodic_) {
    const std::uint64_t period = prefix_.size() - 1;
    const auto cycles = static_cast<double>(x / period);
    return cycles * prefix_[period] + prefix_[x % period];
  }
  if (x >= prefix_.size()) {
    throw RangeError("A(" + std::to_string(x) + ") beyond tabulated limit " +
                     std::to_string(prefix_.size() - 1));
  }
  return prefix_[x];
}

std::optional<std::uint64_t> StepFunctionA::limit() const {
  if (periodic_) return std::nullopt;
  return prefix_.size() - 1;
}

StepFunctionA raw_counting_sums(const std::function<Complex(std::uint64_t)>& a,
                                std::uint64_t limit) {
  if (limit == 0 || limit > kMaxValueLimit) {
    throw SizeError("counting limit " + std::to_string(limit) + " outside [1, " +
                    std::to_string(kMaxValueLimit) + "]");
  }
  std::vector<Complex> prefix(limit + 1);
  CompensatedAccumulator acc;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    acc.add(a(n));
    prefix[n] = checked(acc.value(), "raw_counting_sums");
  }
  return StepFunctionA::tabulated(std::move(prefix));
}

StepFunctionA alternating_counting() { return StepFunctionA::periodic({1.0, -1.0}); }

StepFunctionA gk_counting(std::uint64_t k) {
  if (k < 2) throw DomainError("g_k needs k >= 2");
  std::vector<Complex> period(k, Complex(1.0, 0.0));
  period[k - 1] = Complex(1.0 - static_cast<double>(k), 0.0);
  return StepFunctionA::periodic(std::move(period));
}

Complex abel_weighted_sum(const StepFunctionA& counting, Complex alpha, std::uint64_t x) {
  if (!(alpha.real() > 0.0)) throw DomainError("Abel summation needs Re(alpha) > 0");
  if (x == 0) throw RangeError("Abel summation needs x >= 1");
  CompensatedAccumulator acc;
  Complex w_n = pow_neg(1.0, alpha);
  for (std::uint64_t n = 1; n < x; ++n) {
    const Complex w_next = pow_neg(static_cast<double>(n + 1), alpha);
    acc.add(counting(n) * (w_n - w_next));
    w_n = w_next;
  }
  acc.add(counting(x) * w_n);
  return checked(acc.value(), "abel_weighted_sum");
}

namespace {

void require_series_domain(Complex alpha) {
  if (!(alpha.real() > 0.0)) throw DomainError("closed form needs Re(alpha) > 0");
  if (alpha == Complex(1.0, 0.0)) throw PoleError("closed form has a pole-zero product at alpha = 1");
}

}  // namespace

Complex closed_form_eta_series(Complex alpha, const ZetaAccessor& zeta_eval) {
  return closed_form_gk_series(2, alpha, zeta_eval);
}

Complex closed_form_eta_series(Complex alpha) {
  return closed_form_eta_series(alpha, [](Complex s) { return zeta(s); });
}

Complex closed_form_gk_series(std::uint64_t k, Complex alpha, const ZetaAccessor& zeta_eval) {
  if (k < 2) throw DomainError("g_k needs k >= 2");
  require_series_domain(alpha);
  const Complex factor = 1.0 - std::exp((1.0 - alpha) * std::log(static_cast<double>(k)));
  return checked(factor * zeta_eval(alpha), "closed_form_gk_series");
}

Complex closed_form_gk_series(std::uint64_t k, Complex alpha) {
  return closed_form_gk_series(k, alpha, [](Complex s) { return zeta(s); });
}

}  // namespace molab
