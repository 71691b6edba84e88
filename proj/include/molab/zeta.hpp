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

// Dirichlet eta and Riemann zeta for Re s > 0 via alternating-series
// acceleration, critical-line zero location, and zero tables.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "molab/types.hpp"

namespace molab {

inline constexpr double kDefaultZetaAccuracy = 1e-14;

/// Number of accelerated terms used for accuracy `target` at height |Im s|:
/// max(32, ceil(1.31 * digits + 0.9 * |Im s|)) with digits = -log10(target).
int eta_term_count(double target, double abs_im);

/// sum_{n>=1} (-1)^(n-1) n^(-s) with an explicit number of accelerated terms.
Complex eta_with_terms(Complex s, int terms);

/// eta(s) to within `target_accuracy` for Re s > 0 and |Im s| <= 100.
/// Throws DomainError for Re s <= 0 and PrecisionError when the target is
/// below 1e-14 or needs more terms than double precision supports.
Complex eta(Complex s, double target_accuracy = kDefaultZetaAccuracy);

/// zeta(s) = eta(s) / (1 - 2^(1-s)). PoleError near s = 1; ConditioningError
/// within 1e-6 of the other zeros of the denominator, s = 1 + 2 pi i m / ln 2.
Complex zeta(Complex s, double target_accuracy = kDefaultZetaAccuracy);

/// theta(t) = arg Gamma(1/4 + it/2) - (t/2) ln pi, continuous in t.
double riemann_siegel_theta(double t);
/// Re[e^{i theta(t)} zeta(1/2 + it)]; real-valued with the zeros of zeta on
/// the critical line as its sign changes.
double rotated_zeta(double t, double target_accuracy = kDefaultZetaAccuracy);

struct ZetaZero {
  int index = 0;
  Complex rho;      // re = 0.5
  double residual;  // |eta(rho)| after refinement
};

struct ZeroSearch {
  double tol = 1e-12;
  /// Search interval; defaults to [t_guess - 0.5, t_guess + 0.5].
  std::optional<double> lo;
  std::optional<double> hi;
  /// Multiplier applied to the acceleration term count.
  double depth_factor = 1.0;
};

/// Finds the zero of eta(1/2 + it) nearest `t_guess` inside the bracket:
/// sign changes of rotated_zeta locate it, complex secant iteration on eta
/// refines it. Throws NotFoundError when the bracket holds no sign change or
/// the refinement misses `tol`. The returned index is 0 (unknown).
ZetaZero find_zero(double t_guess, const ZeroSearch& search = {});

/// Reads an `index,imag` CSV with header. Throws ParseError (with line number)
/// or ValidationError (naming the row). With `verify`, each ordinate is
/// re-checked: |eta(1/2 + it)| must be <= verify_tol.
std::vector<ZetaZero> load_zero_table(const std::filesystem::path& path, bool verify = false,
                                      double verify_tol = 1e-9);

}  // namespace molab
