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

#include "molab/zeta.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <string_view>

namespace molab {

namespace {

// (3 + sqrt 8)^n must stay finite in double precision.
constexpr int kMaxEtaTerms = 400;

double log_gamma_imag(Complex z) {
  // Shift to Re z >= 20, then Stirling with Bernoulli terms through B_16.
  double correction = 0.0;
  while (z.real() < 20.0) {
    correction += std::arg(z);
    z += 1.0;
  }
  static constexpr double kCoeffs[] = {1.0 / 12,          -1.0 / 360,      1.0 / 1260,
                                       -1.0 / 1680,       1.0 / 1188,      -691.0 / 360360,
                                       1.0 / 156,         -3617.0 / 122400};
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double c : kCoeffs) {
    series += c * power;
    power *= inv2;
  }
  const Complex lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
  return lg.imag() - correction;
}

Complex secant_step(Complex s0, Complex e0, Complex s1, Complex e1) {
  return s1 - e1 * (s1 - s0) / (e1 - e0);
}

std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
  return v;
}

}  // namespace

int eta_term_count(double target, double abs_im) {
  const double digits = -std::log10(target);
  return std::max(32, static_cast<int>(std::ceil(1.31 * digits + 0.9 * abs_im)));
}

Complex eta_with_terms(Complex s, int terms) {
  if (!(s.real() > 0.0)) throw DomainError("eta needs Re s > 0");
  if (terms < 1 || terms > kMaxEtaTerms) {
    throw PrecisionError("eta term count " + std::to_string(terms) + " outside [1, " +
                         std::to_string(kMaxEtaTerms) + "]");
  }
  // Cohen, Rodriguez Villegas and Zagier, algorithm 1, on a_k = (k+1)^(-s).
  const double n = terms;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0;
  double c = -d;
  Complex sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    c = b - c;
    sum += c * pow_neg(k + 1.0, s);
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return checked(sum / d, "eta");
}

Complex eta(Complex s, double target_accuracy) {
  if (!(s.real() > 0.0)) throw DomainError("eta needs Re s > 0");
  if (!(target_accuracy >= 1e-14)) {
    throw PrecisionError("eta accuracy target below 1e-14 is not reachable in double precision");
  }
  const int terms = eta_term_count(target_accuracy, std::abs(s.imag()));
  if (terms > kMaxEtaTerms) {
    throw PrecisionError("eta at |Im s| = " + std::to_string(std::abs(s.imag())) +
                         " needs more terms than double precision allows");
  }
  return eta_with_terms(s, terms);
}

Complex zeta(Complex s, double target_accuracy) {
  if (std::abs(s - Complex(1.0, 0.0)) < 1e-6) throw PoleError("zeta has a pole at s = 1");
  const double period = 2.0 * std::numbers::pi / std::numbers::ln2;
  const double m = std::round(s.imag() / period);
  if (m != 0.0 && std::abs(s - Complex(1.0, m * period)) < 1e-6) {
    throw ConditioningError("1 - 2^(1-s) vanishes near s = 1 + " + std::to_string(m * period) +
                            "i; refusing the removable singularity");
  }
  const Complex denom = 1.0 - std::exp((1.0 - s) * std::numbers::ln2);
  return checked(eta(s, target_accuracy) / denom, "zeta");
}

double riemann_siegel_theta(double t) {
  if (t < 0.0) return -riemann_siegel_theta(-t);
  return log_gamma_imag(Complex(0.25, 0.5 * t)) - 0.5 * t * std::log(std::numbers::pi);
}

double rotated_zeta(double t, double target_accuracy) {
  const Complex z = zeta(Complex(0.5, t), target_accuracy);
  return (std::polar(1.0, riemann_siegel_theta(t)) * z).real();
}

ZetaZero find_zero(double t_guess, const ZeroSearch& search) {
  if (!(t_guess >= 1.0 && t_guess <= 100.0)) throw DomainError("zero search guess must lie in [1, 100]");
  if (!(search.tol >= 1e-12)) throw DomainError("zero tolerance must be >= 1e-12");
  if (!(search.depth_factor > 0.0)) throw DomainError("depth factor must be positive");
  const double lo = search.lo.value_or(t_guess - 0.5);
  const double hi = search.hi.value_or(t_guess + 0.5);
  if (!(lo > 0.0 && lo < hi)) throw DomainError("zero search bracket must satisfy 0 < lo < hi");

  // Scan for sign changes of the rotated zeta; pick the one nearest t_guess.
  const int steps = std::max(50, static_cast<int>(std::ceil((hi - lo) / 0.02)));
  const double h = (hi - lo) / steps;
  double best_a = 0.0, best_b = 0.0, best_dist = INFINITY;
  double prev_t = lo, prev_z = rotated_zeta(lo);
  for (int i = 1; i <= steps; ++i) {
    const double t = lo + h * i;
    const double z = rotated_zeta(t);
    if ((prev_z <= 0.0 && z > 0.0) || (prev_z >= 0.0 && z < 0.0)) {
      const double dist = std::abs(0.5 * (prev_t + t) - t_guess);
      if (dist < best_dist) {
        best_dist = dist;
        best_a = prev_t;
        best_b = t;
      }
    }
    prev_t = t;
    prev_z = z;
  }
  if (!std::isfinite(best_dist)) {
    throw NotFoundError("no sign change of the rotated zeta in [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
  }

  const double t_max = std::max(std::abs(lo), std::abs(hi));
  const int terms = static_cast<int>(std::ceil(search.depth_factor * eta_term_count(1e-14, t_max)));
  auto eta_at = [terms](Complex s) { return eta_with_terms(s, terms); };

  // Complex secant on eta from the bracket ends.
  Complex s0(0.5, best_a), s1(0.5, best_b);
  Complex e0 = eta_at(s0), e1 = eta_at(s1);
  bool converged = false;
  for (int iter = 0; iter < 60; ++iter) {
    if (e1 == e0) break;
    const Complex s2 = secant_step(s0, e0, s1, e1);
    if (!is_finite(s2) || s2.imag() < best_a - h || s2.imag() > best_b + h ||
        std::abs(s2.real() - 0.5) > 0.25) {
      break;
    }
    s0 = s1;
    e0 = e1;
    s1 = s2;
    e1 = eta_at(s1);
    if (std::abs(s1 - s0) <= 4e-16 * std::abs(s1)) {
      converged = true;
      break;
    }
  }

  double t_root = s1.imag();
  if (!converged) {
    // Fallback: bisection on the rotated zeta inside the bracket.
    double a = best_a, b = best_b;
    double za = rotated_zeta(a);
    while (b - a > 4e-16 * b) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      const double zm = rotated_zeta(m);
      if ((za < 0.0) == (zm < 0.0)) {
        a = m;
        za = zm;
      } else {
        b = m;
      }
    }
    t_root = 0.5 * (a + b);
  }

  ZetaZero zero;
  zero.rho = Complex(0.5, t_root);
  zero.residual = std::abs(eta_at(zero.rho));
  if (!(zero.residual <= search.tol)) {
    throw NotFoundError("refined zero near t=" + std::to_string(t_root) + " has residual " +
                        std::to_string(zero.residual) + " above tolerance");
  }
  return zero;
}

std::vector<ZetaZero> load_zero_table(const std::filesystem::path& path, bool verify,
                                      double verify_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open zero table " + path.string());
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": line 1: missing header");
  ++line_no;
  if (trim(line) != "index,imag") {
    throw ParseError(path.string() + ": line 1: expected header 'index,imag'");
  }
  std::vector<ZetaZero> zeros;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    const std::string where = path.string() + ": line " + std::to_string(line_no);
    if (comma == std::string_view::npos) throw ParseError(where + ": expected two fields");
    const std::string_view f0 = trim(row.substr(0, comma));
    const std::string_view f1 = trim(row.substr(comma + 1));
    ZetaZero z;
    double t = 0.0;
    auto r0 = std::from_chars(f0.data(), f0.data() + f0.size(), z.index);
    auto r1 = std::from_chars(f1.data(), f1.data() + f1.size(), t);
    if (r0.ec != std::errc() || r0.ptr != f0.data() + f0.size()) {
      throw ParseError(where + ": bad index '" + std::string(f0) + "'");
    }
    if (r1.ec != std::errc() || r1.ptr != f1.data() + f1.size() || !std::isfinite(t)) {
      throw ParseError(where + ": bad ordinate '" + std::string(f1) + "'");
    }
    const std::string row_name = "row " + std::to_string(zeros.size() + 1) + " (" + where + ")";
    if (z.index != static_cast<int>(zeros.size()) + 1) {
      throw ValidationError(row_name + ": index " + std::to_string(z.index) + " breaks the sequence 1, 2, ...");
    }
    if (!(t > 0.0)) throw ValidationError(row_name + ": ordinate must be positive");
    if (!zeros.empty() && !(t > zeros.back().rho.imag())) {
      throw ValidationError(row_name + ": ordinates must be strictly increasing");
    }
    z.rho = Complex(0.5, t);
    z.residual = std::abs(eta(z.rho));
    if (verify && !(z.residual <= verify_tol)) {
      throw ValidationError(row_name + ": |eta(1/2 + it)| = " + std::to_string(z.residual) +
                            " exceeds " + std::to_string(verify_tol));
    }
    zeros.push_back(z);
  }
  return zeros;
}

}  // namespace molab
