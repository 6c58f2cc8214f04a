#ifndef IIM_BENCH_H_
#define IIM_BENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "iim/problem.h"

namespace iim {

enum class BenchMode { kEnh, kTeh };

struct BenchmarkSpec {
  std::string dataset;
  const System* system = nullptr;
  BenchMode mode = BenchMode::kEnh;
  // Initial failures: explicit labels, else the K most vulnerable entities,
  // else the smallest K whose kill set reaches |E|/2.
  std::optional<std::vector<std::string>> initial_failures;
  std::optional<std::size_t> vulnerable_k;
  // ENH budgets or TEH protect-set sizes. Empty: five evenly spread values.
  std::vector<std::size_t> sweep;
  // TEH only: a fixed protect set instead of sampling per sweep value.
  std::optional<std::vector<std::string>> protect;
  // Subset of exact, heuristic, case1, case2, ilp-export.
  std::vector<std::string> methods;
  std::uint64_t rng_seed = 1;
  std::uint64_t search_cap = kDefaultSearchCap;
  // When set, ilp-export cells write <dir>/<dataset>_<mode>_<sweep>.lp.
  std::optional<std::string> lp_dir;
};

struct BenchRow {
  std::string dataset;
  std::string mode;
  std::string method;
  std::size_t sweep = 0;
  // ENH: protected count; TEH: |H|; ilp-export: number of constraint rows.
  std::optional<double> quality;
  double seconds = 0.0;
  std::string skipped;  // reason; empty when the cell ran
  std::vector<std::string> plan;
};

struct BenchmarkReport {
  std::vector<BenchRow> rows;
  nlohmann::json metadata;
  // Cross-method bound violations (a heuristic beating the exact solver).
  std::vector<std::string> violations;
};

BenchmarkReport run_benchmark(const BenchmarkSpec& spec);

// Header: dataset,mode,method,sweep,quality,seconds. Skipped cells carry
// "skipped:<reason>" in the quality column.
std::string report_csv(const BenchmarkReport& report, bool with_timing = true);
nlohmann::json report_json(const BenchmarkReport& report);

// Five evenly spread integers in [lo, hi], deduplicated.
std::vector<std::size_t> default_sweep(std::size_t lo, std::size_t hi);

const char* to_string(BenchMode mode);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace iim

#endif  // IIM_BENCH_H_
