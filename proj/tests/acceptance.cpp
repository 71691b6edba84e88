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


// Acceptance driver. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "molab/arith.hpp"
#include "molab/catalog.hpp"
#include "molab/cli.hpp"
#include "molab/mo_verify.hpp"
#include "molab/series.hpp"
#include "molab/zeta.hpp"

namespace {

using molab::Complex;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// Moebius by trial division, no sieve involved.
int mu_trial(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

// Final row of the CSV printed by `molab sum`.
double cli_final_re(const std::vector<std::string>& args, int* exit_code) {
  std::ostringstream out, err;
  *exit_code = molab::cli::run(args, out, err);
  std::istringstream in(out.str());
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  const auto c1 = last.find(',');
  const auto c2 = last.find(',', c1 + 1);
  return std::stod(last.substr(c1 + 1, c2 - c1 - 1));
}

Outcome mertens() {
  Outcome o;
  const std::uint64_t ns[] = {10, 100, 1000, 10000};
  long long m = 0;
  std::uint64_t upto = 0;
  for (auto n : ns) {
    for (++upto; upto <= n; ++upto) m += mu_trial(upto);
    --upto;
    int code = 0;
    const double got = cli_final_re(
        {"sum", "--function", "mobius-raw", "--limit", std::to_string(n), "--threads", "1"}, &code);
    o.require(code == 0, "sum exit code");
    o.require(got == static_cast<double>(m),
              "M(" + std::to_string(n) + ") = " + fmt("%.17g", got) + " expected " + std::to_string(m));
  }
  o.require(m == -23, "oracle M(10^4) = -23");
  const auto t0 = Clock::now();
  int code = 0;
  const double m6 = cli_final_re({"sum", "--function", "mobius-raw", "--limit", "1000000"}, &code);
  const double dt = seconds_since(t0);
  o.require(m6 == 212.0, "M(10^6) = 212");
  o.require(dt < 5.0, fmt("runtime %.2fs", dt));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("M(10^6)=%g in %.3fs", m6, dt);
  return o;
}

Outcome closed_series() {
  Outcome o;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  auto t0 = Clock::now();
  const auto eta2 = molab::partial_sums(molab::eta_family(2.0).spec, 1'000'000).final_sum();
  const double dt1 = seconds_since(t0);
  t0 = Clock::now();
  const auto g9 = molab::partial_sums(molab::g_family(9, 2.0).spec, 1'000'000).final_sum();
  const double dt2 = seconds_since(t0);
  const double e1 = std::abs(eta2 - pi2 / 12.0);
  const double e2 = std::abs(g9 - (8.0 / 9.0) * (pi2 / 6.0));
  o.require(e1 <= 1e-6, fmt("eta err %.3g", e1));
  o.require(e2 <= 1e-5, fmt("g9 err %.3g", e2));
  o.require(dt1 < 10.0 && dt2 < 10.0, fmt("runtimes %.2fs %.2fs", dt1, dt2));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("eta err %.2e, g9 err %.2e", e1, e2);
  return o;
}

Outcome zeta_values() {
  Outcome o;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double e2 = std::abs(molab::zeta(2.0) - pi2 / 6.0);
  const double e1 = std::abs(molab::eta(1.0) - std::numbers::ln2);
  // Direct sum of n^-3 to 10^6 plus the Euler-Maclaurin tail.
  const std::uint64_t n = 1'000'000;
  molab::CompensatedAccumulator acc;
  for (std::uint64_t k = n; k >= 1; --k) {
    const double x = static_cast<double>(k);
    acc.add(1.0 / (x * x * x));
  }
  const double nd = static_cast<double>(n);
  const double tail = 1.0 / (2.0 * nd * nd) - 1.0 / (2.0 * nd * nd * nd) + 1.0 / (4.0 * nd * nd * nd * nd);
  const double direct = acc.value().real() + tail;
  const double e3 = std::abs(molab::zeta(3.0) - direct);
  o.require(e2 <= 1e-12, fmt("zeta(2) err %.3g", e2));
  o.require(e1 <= 1e-12, fmt("eta(1) err %.3g", e1));
  o.require(e3 <= 1e-10, fmt("zeta(3) err %.3g", e3));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("errs %.1e %.1e", e2, e1) + fmt(" %.1e", e3);
  return o;
}

// Independent Hardy Z(t): Euler-Maclaurin zeta plus the asymptotic theta.
double hardy_z_oracle(double t) {
  const Complex s(0.5, t);
  const int n = 60;
  Complex sum = 0.0;
  for (int k = 1; k < n; ++k) sum += std::exp(-s * std::log(static_cast<double>(k)));
  const Complex nn = static_cast<double>(n);
  const Complex ns = std::exp(-s * std::log(nn));
  sum += nn * ns / (s - 1.0) + 0.5 * ns;
  // B_{2j}/(2j)! and the rising factorial s(s+1)...(s+2j-2) N^{-s-2j+1}.
  const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
  Complex rising = s;
  Complex npow = ns / nn;
  double fact = 2.0;
  for (int j = 1; j <= 7; ++j) {
    sum += b[j - 1] / fact * rising * npow;
    rising *= (s + Complex(2.0 * j - 1)) * (s + Complex(2.0 * j));
    npow /= nn * nn;
    fact *= (2.0 * j + 1) * (2.0 * j + 2);
  }
  const double pi = std::numbers::pi;
  const double theta = t / 2 * std::log(t / (2 * pi)) - t / 2 - pi / 8 + 1 / (48 * t) +
                       7 / (5760 * t * t * t) + 31 / (80640 * std::pow(t, 5));
  return (std::exp(Complex(0.0, theta)) * sum).real();
}

double bisect_oracle(double lo, double hi) {
  double flo = hardy_z_oracle(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = hardy_z_oracle(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Outcome zero_finding() {
  Outcome o;
  const double guesses[] = {14, 21, 25};
  std::string summary;
  for (double g : guesses) {
    const auto z = molab::find_zero(g);
    molab::ZeroSearch deep;
    deep.depth_factor = 2.0;
    const auto z2 = molab::find_zero(g, deep);
    const double oracle = bisect_oracle(g - 0.5, g + 0.5);
    const double res = std::abs(molab::eta(z.rho));
    const double t = z.rho.imag();
    o.require(res <= 1e-9, fmt("residual %.3g at guess %g", res, g));
    o.require(std::abs(t - z2.rho.imag()) < 1e-8, fmt("depth instability at %g", g));
    o.require(std::abs(t - oracle) <= 1e-8, fmt("oracle mismatch %.3g at %g", t - oracle, g));
    summary += fmt("%.12f ", t);
  }
  o.detail += (o.detail.empty() ? "" : "; ") + summary;
  return o;
}

Outcome euler_closed_forms() {
  Outcome o;
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> re_dist(0.0, 3.0);
  std::uniform_real_distribution<double> im_dist(-10.0, 10.0);
  const auto table = molab::build_spf_sieve(1000);
  const auto& primes = table.primes();
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  const std::uint64_t prime_powers[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27};
  std::uniform_int_distribution<std::size_t> pick_k(0, std::size(prime_powers) - 1);
  double worst = -1e300;
  int checks = 0;
  auto compare = [&](const molab::MultiplicativeSpec& f, std::uint64_t p, const char* what) {
    const auto direct = molab::euler_factor(f, p);
    const auto closed = molab::euler_factor_closed(f, p);
    const double diff = std::abs(direct.value - closed.value);
    const double slack = diff - (direct.tail_bound + 1e-12);
    worst = std::max(worst, slack);
    ++checks;
    if (slack > 0) o.require(false, std::string(what) + fmt(" p=%g diff %.3g", double(p), diff));
  };
  for (int i = 0; i < 100; ++i) {
    double re = re_dist(rng);
    while (re <= 0.0) re = re_dist(rng);
    const Complex alpha(re, im_dist(rng));
    const std::uint64_t p = primes[pick(rng)];
    const auto eta = molab::eta_family(alpha).spec;
    compare(eta, 2, "eta p=2");
    compare(eta, p == 2 ? 3 : p, "eta odd p");
    const std::uint64_t k = prime_powers[pick_k(rng)];
    const auto g = molab::g_family(k, alpha).spec;
    compare(g, molab::prime_power_of(k)->first, "g_k at p0");
    compare(g, p, "g_k");
    const auto cm = molab::completely_multiplicative(
        "chi", [alpha](std::uint64_t q) { return -molab::pow_neg(static_cast<double>(q), alpha); },
        [alpha](std::uint64_t q) { return std::exp(-alpha.real() * std::log(static_cast<double>(q))); });
    compare(cm, p, "completely multiplicative");
  }
  o.detail += (o.detail.empty() ? "" : "; ") +
              fmt("%g comparisons, worst excess over bound %.2e", checks, worst);
  return o;
}

Outcome multiplicativity() {
  Outcome o;
  const auto t0 = Clock::now();
  int passes = 0, fails = 0;
  for (std::uint64_t k = 2; k <= 30; ++k) {
    const auto rule = molab::raw_gk(k);
    std::vector<Complex> values(10'001);
    for (std::uint64_t n = 1; n <= 10'000; ++n) values[n] = rule(n);
    const auto v = molab::is_multiplicative_bruteforce(values);
    const bool expect = molab::prime_power_of(k).has_value();
    if (v.multiplicative != expect) o.require(false, "k=" + std::to_string(k) + " wrong verdict");
    if (!expect && !v.counterexample) o.require(false, "k=" + std::to_string(k) + " no counterexample");
    if (!expect && v.counterexample) {
      const auto [m, n] = *v.counterexample;
      const bool genuine = std::gcd(m, n) == 1 && m * n <= 10'000 &&
                           std::abs(values[m * n] - values[m] * values[n]) > 1e-9;
      o.require(genuine, "k=" + std::to_string(k) + " bogus counterexample");
    }
    (v.multiplicative ? passes : fails)++;
  }
  const double dt = seconds_since(t0);
  o.require(dt < 10.0, fmt("runtime %.2fs", dt));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("%g pass, %g fail", passes, fails) + fmt(", %.2fs", dt);
  return o;
}

Complex first_zero() { return molab::find_zero(14.0).rho; }

Outcome mo_verdicts() {
  Outcome o;
  using molab::ConditionIIVerdict;
  using molab::ConditionIVerdict;
  const auto mu = molab::mo_check(molab::mobius_over_n().spec, 1'000'000, 100'000);
  o.require(mu.condition_i.verdict == ConditionIVerdict::consistent_with_zero, "mu/n condition (i)");
  o.require(mu.condition_ii.verdict == ConditionIIVerdict::holds_up_to_pmax, "mu/n condition (ii)");
  const auto z = molab::mo_check(molab::eta_family(first_zero()).spec, 1'000'000, 100'000);
  o.require(z.condition_i.verdict == ConditionIVerdict::consistent_with_zero, "eta@rho1 condition (i)");
  o.require(z.condition_ii.verdict == ConditionIIVerdict::holds_up_to_pmax, "eta@rho1 condition (ii)");
  const Complex special(1.0, 2.0 * std::numbers::pi / std::numbers::ln2);
  const auto w = molab::check_condition_ii(molab::eta_family(special).spec, 1000);
  o.require(w.verdict == ConditionIIVerdict::fails_at_witness && w.witness_prime == 2u,
            "eta@1+2pi i/ln2 witness p=2");
  const auto two = molab::check_condition_i(molab::eta_family(2.0).spec, 1'000'000);
  o.require(two.verdict == ConditionIVerdict::inconsistent, "eta@2 condition (i)");
  o.detail += (o.detail.empty() ? "" : "; ") +
              fmt("|S| mu/n %.2e, eta@rho1 %.2e", std::abs(mu.condition_i.s_at_limit),
                  std::abs(z.condition_i.s_at_limit));
  return o;
}

Outcome decay_fit() {
  Outcome o;
  molab::ConditionIOptions opt;
  opt.fit_lo = 10'000;
  opt.fit_hi = 1'000'000;
  const auto r = molab::check_condition_i(molab::eta_family(first_zero()).spec, 1'000'000, opt);
  const double c = r.fitted_decay_exponent;
  o.require(c >= 0.3 && c <= 0.7, fmt("exponent %.4f", c));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("exponent %.4f over %g windows", c, r.fit_points);
  return o;
}

Outcome metric() {
  Outcome o;
  const std::uint64_t p_max = 1'000'000;
  const auto d = molab::distance(molab::mobius_over_n().spec, molab::liouville_over_n().spec, p_max, 64);
  const auto table = molab::build_spf_sieve(p_max);
  molab::CompensatedAccumulator acc;
  for (auto it = table.primes().rbegin(); it != table.primes().rend(); ++it) {
    const double p = *it;
    acc.add(1.0 / (p * (p - 1.0)));
  }
  const double oracle = acc.value().real();
  const double err = std::abs(d.lower_bound - oracle);
  o.require(err <= 1e-10, fmt("D err %.3g", err));
  o.require(d.tail_bound && *d.tail_bound <= 2e-6, d.tail_bound ? fmt("tail %.3g", *d.tail_bound) : "no tail bound");

  // Random triples drawn from the catalog, tabulated functions and perturbations.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> re(0.6, 3.0);
  auto random_spec = [&]() -> molab::MultiplicativeSpec {
    switch (rng() % 5) {
      case 0: return molab::mobius_over_n().spec;
      case 1: return molab::liouville_over_n().spec;
      case 2: return molab::eta_family(Complex(re(rng), 5 * u(rng))).spec;
      case 3: {
        const std::uint64_t ks[] = {2, 3, 4, 5, 7, 8, 9};
        return molab::g_family(ks[rng() % 7], Complex(re(rng), 5 * u(rng))).spec;
      }
      default: {
        std::map<std::pair<std::uint64_t, int>, Complex> values;
        const std::uint64_t ps[] = {2, 3, 5, 7, 11, 13};
        for (int j = 0; j < 4; ++j) values[{ps[rng() % 6], 1 + int(rng() % 3)}] = Complex(u(rng), u(rng));
        return molab::tabulated("random", values);
      }
    }
  };
  int bad = 0;
  for (int i = 0; i < 500; ++i) {
    const auto f = random_spec(), g = random_spec(), h = random_spec();
    if (!molab::metric_axiom_check(f, g, h, 50, 6).holds()) ++bad;
  }
  o.require(bad == 0, fmt("%g triples violate an axiom", bad));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("D=%.15f tail=%.3g", d.lower_bound, d.tail_bound.value_or(-1));
  return o;
}

Outcome transfer() {
  Outcome o;
  const auto r = molab::transfer_experiment(molab::mobius_over_n().spec, {{{2, 1}, Complex(0.0)}});
  const double sf = std::abs(r.f_condition_i.s_at_limit);
  const double sg = std::abs(r.g_condition_i.s_at_limit);
  o.require(sg <= 10.0 * sf + 1e-3, fmt("|S_g| %.3g vs |S_f| %.3g", sg, sf));
  o.require(r.g_condition_i.verdict == molab::ConditionIVerdict::consistent_with_zero, "g verdict");
  o.require(r.distance == 0.5, fmt("distance %.17g", r.distance));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("|S_f|=%.3e |S_g|=%.3e", sf, sg);
  return o;
}

Outcome omega_scan() {
  Outcome o;
  molab::Weight w;
  w.kind = molab::WeightKind::x_pow;
  w.exponent = 0.5;
  const auto t0 = Clock::now();
  const auto r = molab::omega_scan(molab::mobius_over_n().spec, 10'000'000, w);
  const double dt = seconds_since(t0);
  o.require(dt < 60.0, fmt("runtime %.2fs", dt));
  o.require(r.windows.size() >= 20, fmt("%g windows", double(r.windows.size())));
  double lo = 1e300, hi = 0.0;
  for (const auto& win : r.windows) {
    lo = std::min(lo, win.sup);
    hi = std::max(hi, win.sup);
  }
  o.require(lo >= 1e-3 && hi <= 1e3, fmt("sups in [%.3g, %.3g]", lo, hi));
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("%g windows, %.2fs", double(r.windows.size()), dt) +
              fmt(", sups [%.3g, %.3g]", lo, hi);
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"mertens-values", mertens},
      {"closed-form-series", closed_series},
      {"zeta-evaluation", zeta_values},
      {"zero-finding", zero_finding},
      {"euler-closed-forms", euler_closed_forms},
      {"multiplicativity-criterion", multiplicativity},
      {"mo-verdicts", mo_verdicts},
      {"decay-exponent-fit", decay_fit},
      {"metric", metric},
      {"transfer-experiment", transfer},
      {"omega-scan", omega_scan},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%2d] %-28s %s  %s\n", index, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
