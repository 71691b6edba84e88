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


#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "molab/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = molab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string last_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return last;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("molab_cli_" + name);
}

}  // namespace

TEST_CASE("multcheck") {
  const auto g6 = run({"multcheck", "--gk", "6", "--limit", "100"});
  CHECK(g6.code == 1);
  CHECK(g6.out.find("counterexample m=2 n=3") != std::string::npos);
  const auto g8 = run({"multcheck", "--gk", "8", "--limit", "10000"});
  CHECK(g8.code == 0);
  CHECK(g8.out.rfind("pass", 0) == 0);
}

TEST_CASE("zero find") {
  const auto r = run({"zero", "find", "--guess", "14", "--tol", "1e-10"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("14.134725141", 0) == 0);
  const auto none = run({"zero", "find", "--guess", "10", "--lo", "9.5", "--hi", "10.5"});
  CHECK(none.code == 1);
  CHECK(none.err.find("not found") != std::string::npos);
}

TEST_CASE("zero verify") {
  const auto ok = run({"zero", "verify", "--table", MOLAB_SOURCE_DIR "/data/zeta_zeros.csv"});
  CHECK(ok.code == 0);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["all_ok"] == true);
  CHECK(j["zeros"].size() == 10);
  const auto bad_path = temp("bad.csv");
  std::ofstream(bad_path) << "index,imag\n1,14.2\n";
  CHECK(run({"zero", "verify", "--table", bad_path.string()}).code == 1);
  const auto unordered = temp("unordered.csv");
  std::ofstream(unordered) << "index,imag\n1,21.0\n2,14.1\n";
  const auto u = run({"zero", "verify", "--table", unordered.string()});
  CHECK(u.code == 2);
  CHECK(u.err.find("row 2") != std::string::npos);
}

TEST_CASE("sum") {
  const auto eta = run({"sum", "--function", "eta", "--alpha-re", "2", "--alpha-im", "0", "--limit", "1000000"});
  CHECK(eta.code == 0);
  const std::string last = last_line(eta.out);
  CHECK(last.rfind("1000000,", 0) == 0);
  const double re = std::stod(last.substr(8));
  CHECK(std::abs(re - 0.8224670334) <= 1e-6);
  const auto mertens = run({"sum", "--function", "mobius-raw", "--limit", "10"});
  CHECK(last_line(mertens.out) == "10,-1,0");
  const auto js = run({"sum", "--function", "mobius-raw", "--limit", "1000", "--format", "json"});
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["checkpoints"].back()["x"] == 1000);
  CHECK(j["checkpoints"].back()["S"]["re"] == 2.0);
}

TEST_CASE("zero-indexed alpha and the zero-table override") {
  const auto r = run({"mo-check", "--function", "eta", "--zero", "1", "--limit", "100000", "--pmax", "100"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["condition_i"]["verdict"] == "consistent_with_zero");
  const auto one = temp("one_zero.csv");
  std::ofstream(one) << "index,imag\n1,14.134725141734694\n";
  CHECK(run({"sum", "--function", "eta", "--zero", "2", "--zero-table", one.string(), "--limit", "10"}).code == 2);
  setenv("MOLAB_ZERO_TABLE", one.string().c_str(), 1);
  CHECK(run({"sum", "--function", "eta", "--zero", "2", "--limit", "10"}).code == 2);
  CHECK(run({"sum", "--function", "eta", "--zero", "1", "--limit", "10"}).code == 0);
  unsetenv("MOLAB_ZERO_TABLE");
  CHECK(run({"sum", "--function", "eta", "--zero", "2", "--limit", "10"}).code == 0);
}

TEST_CASE("mo-check exit codes") {
  CHECK(run({"mo-check", "--function", "mobius-over-n", "--limit", "100000", "--pmax", "1000"}).code == 0);
  CHECK(run({"mo-check", "--function", "eta", "--alpha-re", "2", "--limit", "100000", "--pmax", "100"}).code == 1);
  const auto w = run({"mo-check", "--function", "eta", "--alpha-re", "1", "--alpha-im", "9.0647202836543876",
                      "--limit", "10000", "--pmax", "10"});
  CHECK(w.code == 1);
  const auto j = nlohmann::json::parse(w.out);
  CHECK(j["condition_ii"]["verdict"] == "fails_at_witness");
  CHECK(j["condition_ii"]["witness_prime"] == 2);
}

TEST_CASE("euler") {
  const auto r = run({"euler", "--function", "gk", "--k", "9", "--alpha-re", "2", "--prime", "3"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value"]["re"].get<double>() - 1.0) <= 1e-12);
  const auto c = nlohmann::json::parse(
      run({"euler", "--function", "mobius-over-n", "--prime", "5", "--closed"}).out);
  CHECK(c["method"] == "closed_form");
  CHECK(c["value"]["re"] == 0.8);
  CHECK(run({"euler", "--function", "mobius-over-n", "--prime", "6"}).code == 2);
}

TEST_CASE("distance, scan, transfer, absconv, sieve, list") {
  const auto d = nlohmann::json::parse(
      run({"distance", "--f", "mobius-over-n", "--g", "liouville-over-n", "--pmax", "1000", "--kmax", "40"}).out);
  CHECK(std::abs(d["lower_bound"].get<double>() - 0.77302961190074) <= 1e-12);
  const auto s = run({"scan", "--function", "mobius-over-n", "--limit", "100000", "--weight", "pow:0.5"});
  CHECK(s.code == 0);
  CHECK(s.out.rfind("window_lo,window_hi,sup_weighted,at_x\n", 0) == 0);
  const auto t = run({"transfer", "--function", "mobius-over-n", "--override", "2,1,0,0", "--limit", "100000"});
  CHECK(t.code == 0);
  CHECK(nlohmann::json::parse(t.out)["distance"] == 0.5);
  const auto a = nlohmann::json::parse(
      run({"absconv", "--function", "inverse-power", "--alpha-re", "2", "--pmax", "1000", "--kmax", "5", "--nmax",
           "100000"})
          .out);
  CHECK(a["n_divergent_trend"] == false);
  const auto sv = run({"sieve", "--function", "gk", "--k", "4", "--alpha-re", "0", "--limit", "8"});
  CHECK(sv.code == 0);
  CHECK(last_line(sv.out) == "8,-3,0");
  const auto l = run({"list"});
  CHECK(l.out.find("liouville-over-n") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"sum", "--limit", "10"}).code == 2);
  const auto unknown = run({"sum", "--function", "nope", "--limit", "10"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("nope") != std::string::npos);
  CHECK(run({"sum", "--function", "eta", "--limit", "10"}).code == 2);
  CHECK(run({"sum", "--function", "mobius-raw", "--limit", "0"}).code == 2);
  CHECK(run({"scan", "--function", "mobius-over-n", "--limit", "100000", "--weight", "sqrt"}).code == 2);
  CHECK(run({"transfer", "--function", "mobius-over-n", "--override", "2,1,0", "--limit", "1000"}).code == 2);
  CHECK(run({"gk", "--format", "xml"}).code == 2);
  CHECK(run({"zero", "find", "--guess", "200"}).code == 2);
}

TEST_CASE("every subcommand has help naming its construct") {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"sieve"}, "multiplicative"},     {{"sum"}, "partial sums"},   {{"mo-check"}, "MO conditions"},
      {{"euler"}, "Euler factor"},       {{"distance"}, "metric"},    {{"scan"}, "Omega"},
      {{"zero", "find"}, "eta"},         {{"zero", "verify"}, "zero"}, {{"transfer"}, "transfer"},
      {{"multcheck"}, "prime power"},    {{"absconv"}, "Absolute"},   {{"list"}, "catalog"},
  };
  for (const auto& [cmd, needle] : cases) {
    auto args = cmd;
    args.push_back("--help");
    const auto r = run(args);
    CAPTURE(cmd.front());
    CHECK(r.code == 0);
    CHECK(r.out.find(needle) != std::string::npos);
  }
}

TEST_CASE("outputs are deterministic across runs and thread counts") {
  const auto a = temp("a.csv"), b = temp("b.csv"), c = temp("c.csv");
  const std::vector<std::string> base{"sum", "--function", "eta", "--alpha-re", "0.5", "--alpha-im", "14.134725141734694",
                                      "--limit", "300000"};
  auto with = [&](const std::filesystem::path& p, const char* threads) {
    auto args = base;
    args.insert(args.end(), {"--out", p.string(), "--threads", threads});
    return run(args).code;
  };
  REQUIRE(with(a, "1") == 0);
  REQUIRE(with(b, "1") == 0);
  REQUIRE(with(c, "4") == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == slurp(c));
  CHECK(slurp(a).size() > 1000);

  auto json_of = [&](const char* threads) {
    return run({"scan", "--function", "mobius-over-n", "--limit", "200000", "--weight", "xlogx", "--format", "json",
                "--threads", threads})
        .out;
  };
  const auto j1 = nlohmann::json::parse(json_of("1"));
  const auto j3 = nlohmann::json::parse(json_of("3"));
  CHECK(j1["threads"] == 1);
  CHECK(j3["threads"] == 3);
  CHECK(j1["windows"] == j3["windows"]);
}
