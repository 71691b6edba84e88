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

#include "molab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "molab/catalog.hpp"
#include "molab/mo_verify.hpp"
#include "molab/report_io.hpp"
#include "molab/series.hpp"
#include "molab/zeta.hpp"

#ifndef MOLAB_DEFAULT_ZERO_TABLE
#define MOLAB_DEFAULT_ZERO_TABLE "data/zeta_zeros.csv"
#endif

namespace molab::cli {

namespace {

struct FunctionFlags {
  std::string id;
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  std::uint64_t k = 0;
  std::uint64_t modulus = 4;
  int zero = 0;
  std::string zero_table;
  // One entry per subcommand that registered the flag.
  std::vector<CLI::Option*> alpha_re_opts;
  std::vector<CLI::Option*> k_opts;
  std::vector<CLI::Option*> zero_opts;
};

bool given(const std::vector<CLI::Option*>& opts) {
  return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* o) { return o->count() > 0; });
}

void add_parameter_flags(CLI::App* sub, FunctionFlags& f) {
  f.alpha_re_opts.push_back(sub->add_option("--alpha-re", f.alpha_re, "Real part of alpha"));
  sub->add_option("--alpha-im", f.alpha_im, "Imaginary part of alpha");
  f.k_opts.push_back(sub->add_option("--k", f.k, "Modulus k of the g_k family"));
  sub->add_option("--modulus", f.modulus, "Character modulus (3 or 4)");
  f.zero_opts.push_back(
      sub->add_option("--zero", f.zero, "Use alpha = the n-th zeta zero on the critical line"));
  sub->add_option("--zero-table", f.zero_table, "Zero table CSV (default: $MOLAB_ZERO_TABLE or bundled)");
}

void add_function_flags(CLI::App* sub, FunctionFlags& f) {
  sub->add_option("--function", f.id, "Catalog id: mobius-over-n, mobius-raw, liouville-over-n, eta, gk, "
                                      "character, inverse-power")
      ->required();
  add_parameter_flags(sub, f);
}

std::string zero_table_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MOLAB_ZERO_TABLE"); env && *env) return env;
  return MOLAB_DEFAULT_ZERO_TABLE;
}

CatalogEntry resolve(const FunctionFlags& f, const std::string& id) {
  CatalogRequest req;
  req.id = id;
  if (given(f.zero_opts)) {
    const auto zeros = load_zero_table(zero_table_path(f.zero_table));
    if (f.zero < 1 || f.zero > static_cast<int>(zeros.size())) {
      throw ValidationError("zero index " + std::to_string(f.zero) + " not in the table");
    }
    req.alpha = find_zero(zeros[f.zero - 1].rho.imag()).rho;
  } else if (given(f.alpha_re_opts)) {
    req.alpha = Complex(f.alpha_re, f.alpha_im);
  }
  if (given(f.k_opts)) req.k = f.k;
  req.modulus = f.modulus;
  return make_catalog_entry(req);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ValidationError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void write_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << "\n"; }

Overrides parse_overrides(const std::vector<std::string>& specs) {
  Overrides out;
  for (const auto& s : specs) {
    std::stringstream ss(s);
    ss.imbue(std::locale::classic());
    std::string field;
    std::vector<std::string> parts;
    while (std::getline(ss, field, ',')) parts.push_back(field);
    if (parts.size() != 4) throw ValidationError("override '" + s + "' must be p,k,re,im");
    try {
      const std::uint64_t p = std::stoull(parts[0]);
      const int k = std::stoi(parts[1]);
      const double re = std::stod(parts[2]);
      const double im = std::stod(parts[3]);
      out[{p, k}] = Complex(re, im);
    } catch (const std::logic_error&) {
      throw ValidationError("override '" + s + "' must be p,k,re,im");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"molab: a numerical laboratory for multiplicative functions whose sum vanishes"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  unsigned hw = std::thread::hardware_concurrency();
  unsigned threads = hw == 0 ? 1 : hw;
  std::string out_path;
  std::string format;

  FunctionFlags ff;
  std::uint64_t limit = 0, p_max = 0, prime = 0, n_max = 0, x_min = 4;
  std::uint64_t fit_lo = 0, fit_hi = 0;
  int k_max = 0;
  double tail = kDefaultTargetTail;
  bool closed = false;
  std::string weight_text;
  std::string g_id;
  std::vector<std::string> override_specs;
  std::uint64_t gk = 0;
  double guess = 0.0, tol = 1e-10, lo = 0.0, hi = 0.0, depth = 1.0;
  std::string table;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--threads", threads, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);
    if (with_format) sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* sieve = app.add_subcommand("sieve", "Tabulate f(n), n <= N, of a multiplicative function from its "
                                            "prime-power values (linear sieve)");
  add_function_flags(sieve, ff);
  sieve->add_option("--limit", limit, "N")->required();
  add_common(sieve, false);

  auto* sum = app.add_subcommand("sum", "Checkpointed partial sums S(x) = sum_{n<=x} f(n); the limit of S is "
                                        "the first MO condition (for mobius-raw: the Mertens function)");
  add_function_flags(sum, ff);
  sum->add_option("--limit", limit, "N")->required();
  add_common(sum, true);

  auto* mo = app.add_subcommand("mo-check", "Check both MO conditions: partial sums tending to 0 and nonzero "
                                            "Euler factors sum_k f(p^k) for p <= pmax");
  add_function_flags(mo, ff);
  mo->add_option("--limit", limit, "N for the partial sums")->required();
  mo->add_option("--pmax", p_max, "Largest prime for the Euler factors")->required();
  mo->add_option("--fit-lo", fit_lo, "Lower end of the decay fit (default sqrt N)");
  mo->add_option("--fit-hi", fit_hi, "Upper end of the decay fit (default N)");
  add_common(mo, false);

  auto* euler = app.add_subcommand("euler", "Euler factor sum_k f(p^k) with a certified truncation tail or "
                                            "its closed form");
  add_function_flags(euler, ff);
  euler->add_option("--prime", prime, "p")->required();
  euler->add_option("--tail", tail, "Target tail bound");
  euler->add_flag("--closed", closed, "Use the closed form");
  add_common(euler, false);

  auto* dist = app.add_subcommand("distance", "Truncated extended metric D(f,g) = sum_p sum_k |g(p^k) - f(p^k)| "
                                              "with a certified tail when available");
  dist->add_option("--f", ff.id, "Catalog id of f")->required();
  dist->add_option("--g", g_id, "Catalog id of g")->required();
  add_parameter_flags(dist, ff);
  dist->add_option("--pmax", p_max, "Largest prime")->required();
  dist->add_option("--kmax", k_max, "Largest exponent")->required();
  add_common(dist, false);

  auto* scan = app.add_subcommand("scan", "Omega-evidence scan: dyadic window suprema of w(x)|S(x)| for "
                                          "w = x log x, x (log log x)^2 or x^C");
  add_function_flags(scan, ff);
  scan->add_option("--limit", limit, "N")->required();
  scan->add_option("--weight", weight_text, "xlogx | xloglog2 | pow:C")->required();
  scan->add_option("--x-min", x_min, "Start of the first window (default 4)");
  add_common(scan, true);

  auto* zero = app.add_subcommand("zero", "Zeros of zeta on the critical line (the alpha for which the "
                                          "alternating family sums to 0)");
  zero->require_subcommand(1);
  auto* zfind = zero->add_subcommand("find", "Locate the zero of eta(1/2 + it) nearest a guess");
  zfind->add_option("--guess", guess, "t guess in [1, 100]")->required();
  zfind->add_option("--tol", tol, "Residual tolerance |eta(rho)| (>= 1e-12)");
  zfind->add_option("--lo", lo, "Bracket start (default guess - 0.5)");
  zfind->add_option("--hi", hi, "Bracket end (default guess + 0.5)");
  zfind->add_option("--depth", depth, "Acceleration depth multiplier");
  add_common(zfind, false);
  auto* zverify = zero->add_subcommand("verify", "Validate a zero table and re-check |eta(1/2 + it)|");
  zverify->add_option("--table", table, "index,imag CSV (default: $MOLAB_ZERO_TABLE or bundled)");
  zverify->add_option("--tol", tol, "Residual tolerance");
  add_common(zverify, false);

  auto* transfer = app.add_subcommand("transfer", "Closeness transfer: perturb f at finitely many prime powers "
                                                  "and test whether g still has vanishing sum");
  add_function_flags(transfer, ff);
  transfer->add_option("--override", override_specs, "p,k,re,im (repeatable)");
  transfer->add_option("--limit", limit, "N")->required();
  transfer->add_option("--pmax", p_max, "Largest prime for Euler-factor checks (default 1000)");
  add_common(transfer, false);

  auto* mult = app.add_subcommand("multcheck", "Brute-force multiplicativity of g_k (multiplicative iff k is a "
                                               "prime power)");
  mult->add_option("--gk", gk, "k >= 2")->required();
  mult->add_option("--limit", limit, "N")->required();
  add_common(mult, false);

  auto* absconv = app.add_subcommand("absconv", "Absolute-convergence diagnostics: sum over prime powers of "
                                                "|f(p^k)| against sum_{n<=N} |f(n)|");
  add_function_flags(absconv, ff);
  absconv->add_option("--pmax", p_max, "Largest prime")->required();
  absconv->add_option("--kmax", k_max, "Largest exponent")->required();
  absconv->add_option("--nmax", n_max, "Largest n")->required();
  add_common(absconv, false);

  auto* list = app.add_subcommand("list", "List catalog function ids");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
    out << target->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Output sink(out_path, out);
    std::ostream& os = sink.stream();

    if (*list) {
      for (const auto& id : catalog_ids()) os << id << "\n";
      return kExitOk;
    }
    if (*sieve) {
      const CatalogEntry e = resolve(ff, ff.id);
      const std::vector<Complex> values = sieve_values(e.spec, limit);
      os << "n,re,im\n";
      char line[96];
      for (std::uint64_t n = 1; n <= limit; ++n) {
        std::snprintf(line, sizeof line, "%llu,%.17g,%.17g\n", static_cast<unsigned long long>(n),
                      values[n].real(), values[n].imag());
        os << line;
      }
      return kExitOk;
    }
    if (*sum) {
      const CatalogEntry e = resolve(ff, ff.id);
      PartialSumOptions opts;
      opts.threads = threads;
      const PartialSumSeries series = partial_sums(e.spec, limit, opts);
      if (format == "json") {
        nlohmann::json cps = nlohmann::json::array();
        for (const auto& c : series.checkpoints) cps.push_back({{"x", c.x}, {"S", complex_json(c.sum)}});
        write_json(os, envelope("partial_sums", {{"function", to_json(e)},
                                                 {"limit", series.limit},
                                                 {"threads", threads},
                                                 {"checkpoint_ratio", series.policy.ratio},
                                                 {"checkpoints", cps}}));
      } else {
        write_checkpoints_csv(os, series);
      }
      return kExitOk;
    }
    if (*mo) {
      const CatalogEntry e = resolve(ff, ff.id);
      ConditionIOptions opts;
      opts.threads = threads;
      if (fit_lo > 0) opts.fit_lo = fit_lo;
      if (fit_hi > 0) opts.fit_hi = fit_hi;
      const MoCheckReport r = mo_check(e.spec, limit, p_max, opts);
      nlohmann::json body = to_json(r);
      body["catalog"] = to_json(e);
      write_json(os, envelope("mo_check", body));
      const bool failing = r.condition_i.verdict == ConditionIVerdict::inconsistent ||
                           r.condition_ii.verdict == ConditionIIVerdict::fails_at_witness;
      return failing ? kExitVerdict : kExitOk;
    }
    if (*euler) {
      const CatalogEntry e = resolve(ff, ff.id);
      const EulerFactorReport r = closed ? euler_factor_closed(e.spec, prime) : euler_factor(e.spec, prime, tail);
      nlohmann::json body = to_json(r);
      body["catalog"] = to_json(e);
      write_json(os, envelope("euler_factor", body));
      return kExitOk;
    }
    if (*dist) {
      const CatalogEntry f = resolve(ff, ff.id);
      const CatalogEntry g = resolve(ff, g_id);
      nlohmann::json body = to_json(distance(f.spec, g.spec, p_max, k_max));
      body["f"] = to_json(f);
      body["g"] = to_json(g);
      write_json(os, envelope("distance", body));
      return kExitOk;
    }
    if (*scan) {
      const CatalogEntry e = resolve(ff, ff.id);
      ScanOptions opts;
      opts.threads = threads;
      opts.x_min = x_min;
      const ScanReport r = omega_scan(e.spec, limit, Weight::parse(weight_text), opts);
      if (format == "json") {
        write_json(os, envelope("scan", to_json(r)));
      } else {
        write_scan_csv(os, r);
      }
      return kExitOk;
    }
    if (*zfind) {
      ZeroSearch search;
      search.tol = tol;
      search.depth_factor = depth;
      if (zfind->count("--lo") > 0) search.lo = lo;
      if (zfind->count("--hi") > 0) search.hi = hi;
      const ZetaZero z = find_zero(guess, search);
      char line[64];
      std::snprintf(line, sizeof line, "%.17g\n", z.rho.imag());
      os << line;
      err << "residual |eta(rho)| = " << z.residual << "\n";
      return kExitOk;
    }
    if (*zverify) {
      const auto zeros = load_zero_table(zero_table_path(table));
      nlohmann::json rows = nlohmann::json::array();
      bool all_ok = true;
      for (const auto& z : zeros) {
        const bool ok = z.residual <= tol;
        all_ok = all_ok && ok;
        nlohmann::json row = to_json(z);
        row["ok"] = ok;
        rows.push_back(row);
      }
      write_json(os, envelope("zero_table", {{"tolerance", tol}, {"zeros", rows}, {"all_ok", all_ok}}));
      return all_ok ? kExitOk : kExitVerdict;
    }
    if (*transfer) {
      const CatalogEntry e = resolve(ff, ff.id);
      TransferOptions opts;
      opts.limit = limit;
      if (p_max > 0) opts.p_max = p_max;
      opts.condition_i.threads = threads;
      const TransferReport r = transfer_experiment(e.spec, parse_overrides(override_specs), opts);
      nlohmann::json body = to_json(r);
      body["catalog"] = to_json(e);
      body["threads"] = threads;
      write_json(os, envelope("transfer", body));
      return r.prediction_confirmed ? kExitOk : kExitVerdict;
    }
    if (*mult) {
      if (limit == 0 || limit > kMaxValueLimit) throw ValidationError("limit out of range");
      const auto a = raw_gk(gk);
      std::vector<Complex> values(limit + 1);
      for (std::uint64_t n = 1; n <= limit; ++n) values[n] = a(n);
      const MultiplicativityVerdict v = is_multiplicative_bruteforce(values);
      if (v.multiplicative) {
        os << "pass: g_" << gk << " is multiplicative on coprime pairs with product <= " << limit << "\n";
        return kExitOk;
      }
      os << "counterexample m=" << v.counterexample->first << " n=" << v.counterexample->second << "\n";
      return kExitVerdict;
    }
    if (*absconv) {
      const CatalogEntry e = resolve(ff, ff.id);
      nlohmann::json body = to_json(absolute_convergence_diag(e.spec, p_max, k_max, n_max));
      body["catalog"] = to_json(e);
      write_json(os, envelope("absolute_convergence", body));
      return kExitOk;
    }
  } catch (const NotFoundError& e) {
    err << "not found: " << e.what() << "\n";
    return kExitVerdict;
  } catch (const Error& e) {
    err << e.kind() << " error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace molab::cli
