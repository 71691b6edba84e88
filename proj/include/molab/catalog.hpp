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

// Built-in multiplicative functions: mu(n)/n, lambda(n)/n, the alternating
// family (-1)^(n-1)/n^alpha, g_k(n)/n^alpha, chi(n)/n^alpha and helpers for
// tabulated and completely multiplicative specs.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "molab/arith.hpp"
#include "molab/types.hpp"

namespace molab {

struct CatalogEntry {
  std::string id;
  /// Printable parameter values, e.g. {"alpha", "2+0i"}.
  std::vector<std::pair<std::string, std::string>> parameters;
  MultiplicativeSpec spec;
  std::string description;
  /// Closed form for sum_{n>=1} f(n), when one is known.
  std::function<Complex()> series_sum;
  bool closed_form_euler() const { return spec.closed_euler.has_value(); }
};

/// mu(n)/n: f(p) = -1/p, f(p^k) = 0 for k >= 2.
CatalogEntry mobius_over_n();
/// mu(n) itself; partial sums are the Mertens function M(x).
CatalogEntry mobius_raw();
/// lambda(n)/n, completely multiplicative with f(p) = -1/p.
CatalogEntry liouville_over_n();
/// (-1)^(n-1) n^(-alpha); DomainError unless Re alpha > 0.
CatalogEntry eta_family(Complex alpha);
/// g_k(n) n^(-alpha). MultiplicativityError unless k is a prime power;
/// DomainError for Re alpha < 0. Re alpha = 0 is accepted but carries no
/// tail certificate or closed forms.
CatalogEntry g_family(std::uint64_t k, Complex alpha);
/// chi(n) n^(-alpha) for a non-principal character given by its table
/// chi(0), ..., chi(modulus - 1). ValidationError names the failed property.
CatalogEntry character_over_n_alpha(std::uint64_t modulus, std::vector<Complex> table, Complex alpha);
/// n^(-alpha); absolutely convergent comparison series for Re alpha > 1.
CatalogEntry inverse_power(Complex alpha);

/// The non-principal characters mod 3 and mod 4.
std::vector<Complex> character_table_mod3();
std::vector<Complex> character_table_mod4();

/// g_k(n) as a plain sequence, multiplicative or not.
std::function<Complex(std::uint64_t)> raw_gk(std::uint64_t k);

/// (p, r) with k = p^r, or nullopt.
std::optional<std::pair<std::uint64_t, int>> prime_power_of(std::uint64_t k);

/// Completely multiplicative spec from f(p). `ratio(p)` must bound |f(p)| and
/// lie in [0, 1) for the tail certificate; the closed Euler factor
/// 1/(1 - f(p)) throws DivergenceError when |f(p)| >= 1.
MultiplicativeSpec completely_multiplicative(std::string name,
                                             std::function<Complex(std::uint64_t)> prime_value,
                                             std::function<double(std::uint64_t)> ratio = {});

/// Spec with the listed prime-power values and f(p^k) = 0 everywhere else.
MultiplicativeSpec tabulated(std::string name, std::map<std::pair<std::uint64_t, int>, Complex> values);

/// Looks up a CLI id: mobius-over-n, mobius-raw, liouville-over-n, eta, gk,
/// character, inverse-power. Missing parameters raise ValidationError.
struct CatalogRequest {
  std::string id;
  std::optional<Complex> alpha;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> modulus;
};
CatalogEntry make_catalog_entry(const CatalogRequest& request);
const std::vector<std::string>& catalog_ids();

}  // namespace molab
