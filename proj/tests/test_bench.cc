#include <filesystem>

#include "doctest.h"

#include "fixtures.h"
#include "iim/bench.h"
#include "iim/cascade.h"
#include "iim/generators.h"
#include "iim/restricted.h"

using namespace iim;

namespace {

BenchmarkSpec table1_spec(const System& s, BenchMode mode) {
  BenchmarkSpec spec;
  spec.dataset = "table1";
  spec.system = &s;
  spec.mode = mode;
  spec.initial_failures = std::vector<std::string>{"a2", "a3"};
  spec.methods = {"exact", "heuristic"};
  return spec;
}

}  // namespace

TEST_CASE("enh budget sweep on table 1") {
  const System s = fixtures::table1();
  BenchmarkSpec spec = table1_spec(s, BenchMode::kEnh);
  spec.sweep = {1, 2};
  const BenchmarkReport r = run_benchmark(spec);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].method == "exact");
  CHECK(r.rows[0].sweep == 1);
  CHECK(r.rows[0].quality == 5.0);
  CHECK(r.rows[1].method == "heuristic");
  CHECK(r.rows[1].quality == 5.0);
  CHECK(r.rows[2].quality == 7.0);
  CHECK(r.rows[3].quality == 7.0);
  CHECK(r.rows[0].plan == std::vector<std::string>{"a2"});
  CHECK(r.violations.empty());
  CHECK(r.metadata.at("tool_version") == kToolVersion);
  CHECK(r.metadata.at("initial_failures") ==
        nlohmann::json::array({"a2", "a3"}));
}

TEST_CASE("teh with a fixed protect set") {
  const System s = fixtures::table1();
  BenchmarkSpec spec = table1_spec(s, BenchMode::kTeh);
  spec.protect = std::vector<std::string>{"b4"};
  const BenchmarkReport r = run_benchmark(spec);
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) {
    CHECK(row.sweep == 1);
    CHECK(row.quality == 1.0);
    CHECK(row.plan == std::vector<std::string>{"a3"});
  }
}

TEST_CASE("empty method list") {
  const System s = fixtures::table1();
  BenchmarkSpec spec = table1_spec(s, BenchMode::kEnh);
  spec.methods.clear();
  const BenchmarkReport r = run_benchmark(spec);
  CHECK(r.rows.empty());
  CHECK(r.metadata.contains("tool_version"));
  CHECK(report_csv(r) == "dataset,mode,method,sweep,quality,seconds\n");
}

TEST_CASE("default sweeps") {
  CHECK(default_sweep(1, 9) == std::vector<std::size_t>{1, 3, 5, 7, 9});
  CHECK(default_sweep(1, 3) == std::vector<std::size_t>{1, 2, 3});
  CHECK(default_sweep(1, 1) == std::vector<std::size_t>{1});
  CHECK(default_sweep(2, 1).empty());
}

TEST_CASE("auto seed selection reaches half the system") {
  const System s = fixtures::table1();
  BenchmarkSpec spec = table1_spec(s, BenchMode::kEnh);
  spec.initial_failures.reset();
  const BenchmarkReport r = run_benchmark(spec);
  CHECK(r.metadata.at("seed_selection").at("selection") == "auto-half");
  CHECK(r.metadata.at("seed_selection").at("K") == 1);
  CHECK(r.metadata.at("initial_failures") == nlohmann::json::array({"a1"}));
  CHECK(2 * r.metadata.at("baseline_failed").get<std::size_t>() >= s.size());
  spec.vulnerable_k = 2;
  const BenchmarkReport k2 = run_benchmark(spec);
  CHECK(k2.metadata.at("seed_selection").at("selection") ==
        "k-most-vulnerable");
  CHECK(k2.metadata.at("baseline_failed") == 7);
}

TEST_CASE("teh protect sampling is seeded and valid") {
  const System s = gen_random(IdrClass::kGeneral, 12, 5);
  BenchmarkSpec spec;
  spec.dataset = "g12";
  spec.system = &s;
  spec.mode = BenchMode::kTeh;
  spec.methods = {"exact", "heuristic"};
  spec.rng_seed = 11;
  const BenchmarkReport a = run_benchmark(spec);
  const BenchmarkReport b = run_benchmark(spec);
  CHECK(report_csv(a, false) == report_csv(b, false));
  CHECK(report_json(a).at("rows").size() == a.rows.size());
  CHECK(a.violations.empty());
  CHECK(!a.rows.empty());
  spec.sweep = {1000};
  CHECK_THROWS_AS(run_benchmark(spec), std::invalid_argument);
  spec.sweep = {0};
  CHECK_THROWS_AS(run_benchmark(spec), std::invalid_argument);
}

TEST_CASE("skipped cells carry a reason") {
  const System s = fixtures::table1();
  BenchmarkSpec spec = table1_spec(s, BenchMode::kEnh);
  spec.sweep = {1};
  spec.methods = {"exact", "case1", "case2"};
  spec.search_cap = 1;
  const BenchmarkReport r = run_benchmark(spec);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].skipped == "search cap exceeded");
  CHECK(r.rows[1].skipped == "system is not case1");
  CHECK(!r.rows[2].skipped.empty());
  CHECK(r.metadata.at("caps_hit") == nlohmann::json::array({"exact@1"}));
  const std::string csv = report_csv(r);
  CHECK(csv.find("table1,enh,exact,1,skipped:search cap exceeded,") !=
        std::string::npos);
}

TEST_CASE("ilp-export cells write lp files") {
  const System s = fixtures::table1();
  BenchmarkSpec spec = table1_spec(s, BenchMode::kEnh);
  spec.sweep = {1};
  spec.methods = {"ilp-export"};
  const auto dir = std::filesystem::temp_directory_path() / "iim_bench_lp";
  std::filesystem::remove_all(dir);
  spec.lp_dir = dir.string();
  const BenchmarkReport r = run_benchmark(spec);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].quality.has_value());
  CHECK(std::filesystem::exists(dir / "table1_enh_1.lp"));
}

TEST_CASE("csv without timing is deterministic") {
  const System s = gen_random(IdrClass::kCaseII, 10, 8);
  BenchmarkSpec spec;
  spec.dataset = "c2";
  spec.system = &s;
  spec.methods = {"exact", "heuristic", "case1", "case2"};
  const std::string once = report_csv(run_benchmark(spec), false);
  CHECK(once == report_csv(run_benchmark(spec), false));
  // Same columns, timing left blank.
  CHECK(once.rfind("dataset,mode,method,sweep,quality,seconds\n", 0) == 0);
  CHECK(once.find("c2,enh,exact,1,") != std::string::npos);
  CHECK(once.find(",\n") != std::string::npos);
}
