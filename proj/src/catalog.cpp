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

#include "molab/catalog.hpp"

#include <cmath>
#include <memory>
#include <numeric>

#include "molab/series.hpp"

namespace molab {

namespace {

double as_double(std::uint64_t n) { return static_cast<double>(n); }

std::string pow_key(Complex alpha) { return "pow:" + format_complex(alpha); }

void require_positive_real_part(Complex alpha, const char* family) {
  if (!(alpha.real() > 0.0)) {
    throw DomainError(std::string(family) + " needs Re(alpha) > 0, got " + format_complex(alpha));
  }
}

}  // namespace

std::optional<std::pair<std::uint64_t, int>> prime_power_of(std::uint64_t k) {
  if (k < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= k; ++d) {
    if (k % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(k, 1);
  int r = 0;
  while (k % p == 0) {
    k /= p;
    ++r;
  }
  if (k != 1) return std::nullopt;
  return std::make_pair(p, r);
}

MultiplicativeSpec completely_multiplicative(std::string name,
                                             std::function<Complex(std::uint64_t)> prime_value,
                                             std::function<double(std::uint64_t)> ratio) {
  MultiplicativeSpec f;
  f.name = std::move(name);
  f.completely_multiplicative = true;
  f.prime_power_value = [prime_value](std::uint64_t p, int k) {
    return ipow(prime_value(p), k);
  };
  if (ratio) {
    f.tail = [ratio](std::uint64_t p) { return TailRule{ratio(p), 1}; };
  }
  const std::string label = f.name;
  f.closed_euler = ClosedEulerFactor{
      [prime_value, label](std::uint64_t p) -> std::optional<Complex> {
        const Complex fp = prime_value(p);
        if (!(std::abs(fp) < 1.0)) {
          throw DivergenceError("Euler factor of " + label + " diverges at p=" + std::to_string(p) +
                                ": |f(p)| = " + std::to_string(std::abs(fp)) + " >= 1");
        }
        return 1.0 / (1.0 - fp);
      },
      1};
  return f;
}

MultiplicativeSpec tabulated(std::string name, std::map<std::pair<std::uint64_t, int>, Complex> values) {
  MultiplicativeSpec f;
  f.name = std::move(name);
  std::map<std::uint64_t, int> depth;
  std::uint64_t support = 1;
  for (const auto& [key, v] : values) {
    if (key.second < 1) throw ValidationError("tabulated spec needs exponents k >= 1");
    if (!is_finite(v)) throw ValidationError("tabulated spec values must be finite");
    depth[key.first] = std::max(depth[key.first], key.second);
    support = std::max(support, key.first);
  }
  auto table = std::make_shared<const std::map<std::pair<std::uint64_t, int>, Complex>>(std::move(values));
  f.prime_power_value = [table](std::uint64_t p, int k) {
    const auto it = table->find({p, k});
    return it == table->end() ? Complex{} : it->second;
  };
  f.tail = [depth](std::uint64_t p) {
    const auto it = depth.find(p);
    return TailRule{0.0, it == depth.end() ? 1 : it->second};
  };
  f.prime_support = support;
  return f;
}

CatalogEntry mobius_over_n() {
  CatalogEntry e;
  e.id = "mobius-over-n";
  e.description = "Moebius function divided by n";
  e.spec.name = "mu(n)/n";
  e.spec.prime_power_value = [](std::uint64_t p, int k) {
    return k == 1 ? Complex(-1.0 / as_double(p), 0.0) : Complex{};
  };
  e.spec.tail = [](std::uint64_t) { return TailRule{0.0, 1}; };
  e.spec.closed_euler = ClosedEulerFactor{
      [](std::uint64_t p) -> std::optional<Complex> { return Complex(1.0 - 1.0 / as_double(p), 0.0); }, 1};
  e.spec.envelope = PrimePowerEnvelope{1.0, 1.0, 1, 1, "neg_inv_p"};
  e.series_sum = [] { return Complex{}; };
  return e;
}

CatalogEntry mobius_raw() {
  CatalogEntry e;
  e.id = "mobius-raw";
  e.description = "Moebius function; partial sums give the Mertens function";
  e.spec.name = "mu(n)";
  e.spec.prime_power_value = [](std::uint64_t, int k) { return k == 1 ? Complex(-1.0, 0.0) : Complex{}; };
  e.spec.tail = [](std::uint64_t) { return TailRule{0.0, 1}; };
  e.spec.envelope = PrimePowerEnvelope{1.0, 0.0, 1, 1, "neg_one"};
  return e;
}

CatalogEntry liouville_over_n() {
  CatalogEntry e;
  e.id = "liouville-over-n";
  e.description = "Liouville function divided by n (completely multiplicative)";
  e.spec = completely_multiplicative(
      "lambda(n)/n", [](std::uint64_t p) { return Complex(-1.0 / as_double(p), 0.0); },
      [](std::uint64_t p) { return 1.0 / as_double(p); });
  e.spec.envelope = PrimePowerEnvelope{1.0, 1.0, 1 << 30, 1, "neg_inv_p"};
  e.series_sum = [] { return Complex{}; };
  return e;
}

CatalogEntry eta_family(Complex alpha) {
  require_positive_real_part(alpha, "eta family");
  CatalogEntry e;
  e.id = "eta";
  e.parameters = {{"alpha", format_complex(alpha)}};
  e.description = "(-1)^(n-1) / n^alpha";
  e.spec.name = "(-1)^(n-1)/n^" + format_complex(alpha);
  e.spec.prime_power_value = [alpha](std::uint64_t p, int k) {
    const Complex v = pow_neg(as_double(p), alpha * static_cast<double>(k));
    return p == 2 ? -v : v;
  };
  const double sigma = alpha.real();
  e.spec.tail = [sigma](std::uint64_t p) { return TailRule{std::pow(as_double(p), -sigma), 1}; };
  e.spec.closed_euler = ClosedEulerFactor{
      [alpha](std::uint64_t p) -> std::optional<Complex> {
        if (p == 2) {
          const Complex two_alpha = std::exp(alpha * std::log(2.0));
          return (two_alpha - 2.0) / (two_alpha - 1.0);
        }
        return 1.0 / (1.0 - pow_neg(as_double(p), alpha));
      },
      2};
  e.spec.envelope = PrimePowerEnvelope{1.0, sigma, 1 << 30, 2, pow_key(alpha)};
  e.series_sum = [alpha] { return closed_form_eta_series(alpha); };
  return e;
}

CatalogEntry g_family(std::uint64_t k, Complex alpha) {
  const auto pp = prime_power_of(k);
  if (!pp) {
    throw MultiplicativityError("g_k is multiplicative only when k is a prime power; k=" +
                                std::to_string(k) + " is not");
  }
  if (alpha.real() < 0.0) throw DomainError("g_k family needs Re(alpha) >= 0, got " + format_complex(alpha));
  const auto [p0, r] = *pp;
  const double one_minus_k = 1.0 - as_double(k);
  CatalogEntry e;
  e.id = "gk";
  e.parameters = {{"k", std::to_string(k)}, {"alpha", format_complex(alpha)}};
  e.description = "g_k(n) / n^alpha with g_k(n) = 1 - k if k | n else 1";
  e.spec.name = "g_" + std::to_string(k) + "(n)/n^" + format_complex(alpha);
  e.spec.prime_power_value = [alpha, p0 = p0, r = r, one_minus_k](std::uint64_t p, int m) {
    const Complex v = pow_neg(as_double(p), alpha * static_cast<double>(m));
    return (p == p0 && m >= r) ? one_minus_k * v : v;
  };
  if (alpha.real() > 0.0) {
    const double sigma = alpha.real();
    e.spec.tail = [sigma, p0 = p0, r = r](std::uint64_t p) {
      return TailRule{std::pow(as_double(p), -sigma), p == p0 ? r : 1};
    };
    e.spec.closed_euler = ClosedEulerFactor{
        [alpha, k, p0 = p0](std::uint64_t p) -> std::optional<Complex> {
          const Complex inv = 1.0 / (1.0 - pow_neg(as_double(p), alpha));
          if (p != p0) return inv;
          const Complex k_alpha = std::exp(alpha * std::log(as_double(k)));
          return (k_alpha - as_double(k)) / k_alpha * inv;
        },
        p0};
    e.spec.envelope = PrimePowerEnvelope{1.0, sigma, 1 << 30, p0, pow_key(alpha)};
    e.series_sum = [k, alpha] { return closed_form_gk_series(k, alpha); };
  }
  return e;
}

std::vector<Complex> character_table_mod3() { return {0.0, 1.0, -1.0}; }
std::vector<Complex> character_table_mod4() { return {0.0, 1.0, 0.0, -1.0}; }

CatalogEntry character_over_n_alpha(std::uint64_t modulus, std::vector<Complex> table, Complex alpha) {
  require_positive_real_part(alpha, "character family");
  if (modulus < 2 || table.size() != modulus) {
    throw ValidationError("character table must have exactly modulus >= 2 entries");
  }
  constexpr double kTol = 1e-12;
  for (std::uint64_t n = 0; n < modulus; ++n) {
    if (!is_finite(table[n])) throw ValidationError("character value at " + std::to_string(n) + " is not finite");
    const bool coprime = std::gcd(n, modulus) == 1;
    if (coprime != (std::abs(table[n]) > kTol)) {
      throw ValidationError("support: chi(" + std::to_string(n) + ") must be zero exactly when gcd(n, " +
                            std::to_string(modulus) + ") > 1");
    }
  }
  if (std::abs(table[1] - 1.0) > kTol) throw ValidationError("normalisation: chi(1) must be 1");
  for (std::uint64_t m = 1; m < modulus; ++m) {
    for (std::uint64_t n = m; n < modulus; ++n) {
      if (std::abs(table[m * n % modulus] - table[m] * table[n]) > kTol) {
        throw ValidationError("complete multiplicativity: chi(" + std::to_string(m) + "*" +
                              std::to_string(n) + ") != chi(" + std::to_string(m) + ")chi(" +
                              std::to_string(n) + ")");
      }
    }
  }
  Complex total = 0.0;
  for (const Complex& v : table) total += v;
  if (std::abs(total) > kTol) {
    throw ValidationError("non-principal: character values over a period must sum to 0");
  }

  CatalogEntry e;
  e.id = "character";
  e.parameters = {{"modulus", std::to_string(modulus)}, {"alpha", format_complex(alpha)}};
  e.description = "chi(n) / n^alpha for a non-principal Dirichlet character";
  const double sigma = alpha.real();
  e.spec = completely_multiplicative(
      "chi_" + std::to_string(modulus) + "(n)/n^" + format_complex(alpha),
      [table, modulus, alpha](std::uint64_t p) { return table[p % modulus] * pow_neg(as_double(p), alpha); },
      [table, modulus, sigma](std::uint64_t p) {
        return std::abs(table[p % modulus]) * std::pow(as_double(p), -sigma);
      });
  e.spec.envelope = PrimePowerEnvelope{1.0, sigma, 1 << 30, 1, ""};
  return e;
}

CatalogEntry inverse_power(Complex alpha) {
  require_positive_real_part(alpha, "inverse power");
  CatalogEntry e;
  e.id = "inverse-power";
  e.parameters = {{"alpha", format_complex(alpha)}};
  e.description = "n^(-alpha), the zeta series";
  const double sigma = alpha.real();
  e.spec = completely_multiplicative(
      "1/n^" + format_complex(alpha), [alpha](std::uint64_t p) { return pow_neg(as_double(p), alpha); },
      [sigma](std::uint64_t p) { return std::pow(as_double(p), -sigma); });
  e.spec.envelope = PrimePowerEnvelope{1.0, sigma, 1 << 30, 1, pow_key(alpha)};
  return e;
}

std::function<Complex(std::uint64_t)> raw_gk(std::uint64_t k) {
  if (k < 2) throw DomainError("g_k needs k >= 2");
  return [k](std::uint64_t n) {
    return n % k == 0 ? Complex(1.0 - as_double(k), 0.0) : Complex(1.0, 0.0);
  };
}

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {"mobius-over-n", "mobius-raw", "liouville-over-n", "eta",
                                               "gk",            "character",  "inverse-power"};
  return ids;
}

CatalogEntry make_catalog_entry(const CatalogRequest& request) {
  auto need_alpha = [&]() {
    if (!request.alpha) throw ValidationError("function '" + request.id + "' needs alpha");
    return *request.alpha;
  };
  if (request.id == "mobius-over-n") return mobius_over_n();
  if (request.id == "mobius-raw") return mobius_raw();
  if (request.id == "liouville-over-n") return liouville_over_n();
  if (request.id == "eta") return eta_family(need_alpha());
  if (request.id == "inverse-power") return inverse_power(need_alpha());
  if (request.id == "gk") {
    if (!request.k) throw ValidationError("function 'gk' needs k");
    return g_family(*request.k, need_alpha());
  }
  if (request.id == "character") {
    const std::uint64_t q = request.modulus.value_or(4);
    if (q == 3) return character_over_n_alpha(3, character_table_mod3(), need_alpha());
    if (q == 4) return character_over_n_alpha(4, character_table_mod4(), need_alpha());
    throw ValidationError("built-in characters exist only for modulus 3 and 4");
  }
  throw ValidationError("unknown function id '" + request.id + "'");
}

}  // namespace molab
