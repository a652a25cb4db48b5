// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "revbound/exact.hpp"
#include "revbound/io.hpp"
#include "revbound/mechanisms.hpp"
#include "revbound/myerson.hpp"

using namespace revbound;
namespace fs = std::filesystem;

namespace {

const std::string kSourceDir = REVBOUND_SOURCE_DIR;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "revbound_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_scratch(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  write_text_file(path.string(), text);
  return path.string();
}

// Runs the command-line binary through the shell and returns its exit code.
int run_cli(const std::string& args) {
  const std::string command =
      std::string(REVBOUND_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE_BEGIN("io_cli");

TEST_CASE("instance loader: bundled example files parse") {
  const LoadedInstance pair =
      load_instance_file(kSourceDir + "/data/examples/two_iid.json");
  CHECK(pair.instance.n() == 2);
  CHECK_FALSE(pair.has_alphas);
  CHECK(pair.instance.feasibility.kind == Feasibility::Kind::kKUnit);
  CHECK(pair.instance.feasibility.cap == 1);
  CHECK(pair.instance.bidders[0].support() == std::vector<double>{1.0, 2.0});
  CHECK(exact_opt(MyersonSolver(pair.instance)) == doctest::Approx(1.5));

  const LoadedInstance skew =
      load_instance_file(kSourceDir + "/data/examples/ironing_demo.json");
  CHECK(skew.instance.n() == 1);
  CHECK(exact_opt(MyersonSolver(skew.instance)) == doctest::Approx(4.5));

  const LoadedInstance part =
      load_instance_file(kSourceDir + "/data/examples/partition_demo.json");
  CHECK(part.instance.feasibility.kind == Feasibility::Kind::kPartition);
  CHECK(part.instance.feasibility.groups.size() == 2);

  const PaInstance pa =
      load_pa_instance_file(kSourceDir + "/data/examples/position_demo.json");
  CHECK(pa.n() == 2);
  CHECK(pa.alphas == std::vector<double>{1.0, 0.5});
}

TEST_CASE("instance loader: diagnostics name the offending field") {
  const std::string missing = write_scratch(
      "missing_probs.json", R"({"bidders":[{"support":[1,2]}]})");
  CHECK_THROWS_WITH_AS(load_instance_file(missing),
                       doctest::Contains("bidders[0]"), std::runtime_error);

  const std::string bad_sum = write_scratch(
      "bad_sum.json",
      R"({"bidders":[{"support":[1],"probs":[1.0]},
          {"support":[1,2],"probs":[0.9,0.2]}],
          "feasibility":{"kind":"kunit","H":1}})");
  CHECK_THROWS_WITH_AS(load_instance_file(bad_sum),
                       doctest::Contains("bidders[1]"), std::runtime_error);

  const std::string bad_kind = write_scratch(
      "bad_kind.json",
      R"({"bidders":[{"support":[1],"probs":[1.0]}],
          "feasibility":{"kind":"mystery"}})");
  CHECK_THROWS_WITH_AS(load_instance_file(bad_kind),
                       doctest::Contains("kind"), std::runtime_error);

  const std::string not_json =
      write_scratch("not_json.json", "this is not json");
  CHECK_THROWS_WITH_AS(load_instance_file(not_json),
                       doctest::Contains("not_json.json"),
                       std::runtime_error);

  // Position loader requires alphas.
  const std::string no_alphas = write_scratch(
      "no_alphas.json",
      R"({"bidders":[{"support":[1],"probs":[1.0]}]})");
  CHECK_THROWS_WITH_AS(load_pa_instance_file(no_alphas),
                       doctest::Contains("alphas"), std::runtime_error);
}

TEST_CASE("s-curve CSV export") {
  const Distribution d({1.0, 2.0}, {0.5, 0.5});
  const MyersonSolver solver(Instance{{d, d}, Feasibility::k_unit(1)});
  const std::string exact = scurve_csv(exact_s_curve(solver));
  CHECK(exact.find("tau,s,provenance") == 0);
  CHECK(exact.find("exact") != std::string::npos);

  const SCurve mc = mc_s_curve(solver, {0.0, 1.0, 2.0}, 1000, 3);
  const std::string sampled = scurve_csv(mc);
  CHECK(sampled.find("monte-carlo(1000)") != std::string::npos);
}

TEST_CASE("bound table CSV and markdown exports") {
  const BoundTable table = table_esp_k({50});
  const std::string csv = bound_table_csv(table);
  CHECK(csv.find("table,n,H,k,lp_value,bound,baseline") == 0);
  CHECK(csv.find("esp-k") != std::string::npos);
  CHECK(csv.find("0.6606445535") != std::string::npos);

  const std::string md = bound_table_markdown(table);
  CHECK(md.find('|') != std::string::npos);
  CHECK(md.find("0.6606") != std::string::npos);

  BoundTable empty;
  empty.which = "esp-k";
  CHECK(bound_table_csv(empty).find("table,n,H,k") == 0);
}

TEST_CASE("golden comparison: round trip, tolerance, and missing rows") {
  const std::string golden_path = write_scratch("golden_esp.csv",
                                                "# reference values\n"
                                                "table,n,H,k,bound\n"
                                                "esp-k,0,0,50,0.6606445535\n"
                                                "esp-k,0,0,100,0.6613313646\n");
  const std::vector<GoldenRow> golden = read_golden_csv(golden_path);
  REQUIRE(golden.size() == 2);
  CHECK(golden[0].table == "esp-k");
  CHECK(golden[0].k == 50);

  const BoundTable table = table_esp_k({50, 100});
  const GoldenReport pass = compare_to_golden(table, golden, 1e-4);
  CHECK(pass.passed);
  CHECK(pass.rows_compared == 2);
  CHECK(pass.max_abs_diff <= 1e-8);
  CHECK(pass.failures.empty());
  CHECK_FALSE(pass.summary().empty());

  // A perturbed value fails and reports the actual bound.
  std::vector<GoldenRow> skewed = golden;
  skewed[1].bound += 5e-4;
  const GoldenReport fail = compare_to_golden(table, skewed, 1e-4);
  CHECK_FALSE(fail.passed);
  REQUIRE(fail.failures.size() == 1);
  CHECK(fail.failures[0].found);
  CHECK(fail.failures[0].golden.k == 100);
  CHECK(fail.failures[0].actual == doctest::Approx(0.6613313646));

  // A golden row with no generated counterpart fails as "missing".
  GoldenRow orphan;
  orphan.table = "esp-k";
  orphan.k = 800;
  orphan.bound = 0.6619;
  const GoldenReport missing =
      compare_to_golden(table, {golden[0], orphan}, 1e-4);
  CHECK_FALSE(missing.passed);
  REQUIRE(missing.failures.size() == 1);
  CHECK_FALSE(missing.failures[0].found);

  // Malformed files are named in the diagnostic.
  const std::string bad =
      write_scratch("golden_bad.csv", "bound,k\n0.5,50\n");
  CHECK_THROWS_WITH_AS(read_golden_csv(bad), doctest::Contains("golden_bad"),
                       std::runtime_error);
}

TEST_CASE("bundled reference tables match the solvers at 1e-4") {
  // The finite-program tables reproduce their published four-digit values.
  const std::vector<GoldenRow> spm =
      read_golden_csv(kSourceDir + "/data/golden/spm_n.csv");
  const GoldenReport spm_report = compare_to_golden(
      table_spm_n({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {200, 400}), spm, 1e-4);
  CHECK(spm_report.passed);
  CHECK(spm_report.rows_compared == 20);

  const std::vector<GoldenRow> esp_k =
      read_golden_csv(kSourceDir + "/data/golden/esp_k.csv");
  CHECK(compare_to_golden(table_esp_k({50, 100, 200, 400}), esp_k, 1e-4)
            .passed);

  const std::vector<GoldenRow> esp_n =
      read_golden_csv(kSourceDir + "/data/golden/esp_n.csv");
  CHECK(compare_to_golden(table_esp_n({1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                                      {200, 400}),
                          esp_n, 1e-4)
            .passed);

  // The multi-unit reference digits come from a lower-precision evaluation
  // of the continuous program: they drift from the exact closed-form
  // factors by 1.05e-4 (H=1) up to 2.62e-3 (H=10).  A 1e-4 comparison
  // therefore fails on every row, 1e-3 fails exactly on H in {7..10}, and
  // 3e-3 passes.  The README documents the drift; this test pins it.
  const BoundTable multi_table = table_multiunit({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const std::vector<GoldenRow> multi =
      read_golden_csv(kSourceDir + "/data/golden/multiunit.csv");
  const GoldenReport strict = compare_to_golden(multi_table, multi, 1e-4);
  CHECK_FALSE(strict.passed);
  CHECK(strict.failures.size() == 10);
  CHECK(strict.max_abs_diff <= 3e-3);

  const GoldenReport loose = compare_to_golden(multi_table, multi, 1e-3);
  CHECK_FALSE(loose.passed);
  REQUIRE(loose.failures.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(loose.failures[i].golden.H == static_cast<int>(i) + 7);
    CHECK(loose.failures[i].found);
  }
  CHECK(compare_to_golden(multi_table, multi, 3e-3).passed);
}

TEST_CASE("config parsing: sections, quotes, comments, lists") {
  const Config config = parse_config(
      "# comment\n"
      "seed = 7\n"
      "label = \"hello world\"  # trailing comment\n"
      "\n"
      "[tables]\n"
      "tolerance = 1e-4\n"
      "slow = true\n"
      "ks = 200,400\n",
      "test");
  CHECK(config_get(config, "label", "") == "hello world");
  CHECK(config_get_int(config, "seed", -1) == 7);
  CHECK(config_get_int(config, "absent", 42) == 42);
  CHECK(config_get_double(config, "tables.tolerance", 0.0) ==
        doctest::Approx(1e-4));
  CHECK(config_get_bool(config, "tables.slow", false));
  CHECK(parse_int_list(config_get(config, "tables.ks", "")) ==
        std::vector<int>{200, 400});

  CHECK(parse_int_list("1,2,5") == std::vector<int>{1, 2, 5});
  CHECK(parse_int_list("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_int_list("1,3..5,9") == std::vector<int>{1, 3, 4, 5, 9});
  CHECK_THROWS_AS(parse_int_list("5..1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("abc"), std::invalid_argument);

  CHECK_THROWS_WITH_AS(parse_config("key_without_value\n", "cfg"),
                       doctest::Contains("cfg"), std::runtime_error);
}

TEST_CASE("config hashes are order-insensitive and value-sensitive") {
  Config a;
  a["x"] = "1";
  a["y"] = "2";
  Config b;
  b["y"] = "2";
  b["x"] = "1";
  const std::string ha = config_hash(a);
  CHECK(ha == config_hash(b));
  CHECK(ha.size() == 16);
  CHECK(ha.find_first_not_of("0123456789abcdef") == std::string::npos);
  b["y"] = "3";
  CHECK(ha != config_hash(b));
}

TEST_CASE("outcome serialization and JSONL appends") {
  const Distribution d({1.0, 2.0}, {0.5, 0.5});
  const Instance instance{{d, d}, Feasibility::k_unit(1)};
  const MechanismOutcome out =
      run_spm(instance, {{2.0, 1.0}, "custom"}, {2.0, 2.0});
  const nlohmann::json j = outcome_to_json(out);
  CHECK(j["mechanism"] == "spm");
  CHECK(j["winners"] == std::vector<std::size_t>{0});
  CHECK(j["revenue"] == 2.0);

  const fs::path path = scratch_dir() / "outcomes.jsonl";
  fs::remove(path);
  append_jsonl(path.string(), j);
  append_jsonl(path.string(), j);
  const std::string text = read_text_file(path.string());
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("\"mechanism\":\"spm\"") != std::string::npos);
}

TEST_CASE("command line: tables, golden gates, and exit codes") {
  const fs::path out_csv = scratch_dir() / "esp_k.csv";
  CHECK(run_cli("tables --which esp-k --k 50 --out " + out_csv.string()) == 0);
  const std::string csv = read_text_file(out_csv.string());
  CHECK(csv.find("0.6606445535") != std::string::npos);

  const fs::path out_md = scratch_dir() / "esp_k.md";
  CHECK(run_cli("tables --which esp-k --k 50 --format md --out " +
                out_md.string()) == 0);
  CHECK(read_text_file(out_md.string()).find('|') != std::string::npos);

  // Golden comparisons gate the exit code.
  const std::string good = write_scratch("cli_golden_ok.csv",
                                         "table,n,H,k,bound\n"
                                         "esp-k,0,0,50,0.6606\n");
  CHECK(run_cli("tables --which esp-k --k 50 --golden-file " + good) == 0);
  const std::string off = write_scratch("cli_golden_off.csv",
                                        "table,n,H,k,bound\n"
                                        "esp-k,0,0,50,0.6616\n");
  CHECK(run_cli("tables --which esp-k --k 50 --golden-file " + off) == 1);

  // Usage errors: unknown subcommand, missing required seed.
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("certify --random 2") == 2);
  CHECK(run_cli("lp-solve --family bogus --k 50") == 2);
}

TEST_CASE("command line: certification verdicts") {
  CHECK(run_cli("certify --seed 7 --random 3") == 0);
  CHECK(run_cli("certify --seed 7 --random 3 --factor 0.99") == 1);
  CHECK(run_cli("certify --seed 1 --instance " + kSourceDir +
                "/data/examples/position_demo.json") == 0);
}

TEST_CASE("command line: simulation reports are byte-identical") {
  const fs::path report_a = scratch_dir() / "report_a.json";
  const fs::path report_b = scratch_dir() / "report_b.json";
  const std::string base = "simulate --instance " + kSourceDir +
                           "/data/examples/two_iid.json --seed 5 --trials "
                           "2000 --mechanism uniform-spm --report ";
  CHECK(run_cli(base + report_a.string()) == 0);
  CHECK(run_cli(base + report_b.string()) == 0);
  const std::string a = read_text_file(report_a.string());
  CHECK(a == read_text_file(report_b.string()));
  const nlohmann::json parsed = nlohmann::json::parse(a);
  CHECK(parsed.contains("config_hash"));
  CHECK(parsed.contains("version"));
}

TEST_SUITE_END();
