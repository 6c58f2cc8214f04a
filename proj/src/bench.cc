#include "iim/bench.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "iim/cascade.h"
#include "iim/exact.h"
#include "iim/heuristics.h"
#include "iim/ilp.h"
#include "iim/restricted.h"

namespace iim {

const char* to_string(BenchMode mode) {
  return mode == BenchMode::kEnh ? "enh" : "teh";
}

std::vector<std::size_t> default_sweep(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  if (hi < lo) return out;
  constexpr std::size_t kPoints = 5;
  for (std::size_t i = 0; i < kPoints; ++i) {
    out.push_back(lo + (hi - lo) * i / (kPoints - 1));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Uniform sample without replacement, driven only by mt19937_64 output so
// results match across standard libraries.
EntitySet sample_subset(const System& system, const EntitySet& pool,
                        std::size_t count, std::uint64_t seed) {
  std::vector<EntityId> items = by_label(system, pool);
  std::mt19937_64 rng(seed);
  count = std::min(count, items.size());
  EntitySet out = system.empty_set();
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t span = items.size() - k;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(items[k], items[k + r % span]);
    out.set(items[k].index);
  }
  return out;
}

struct Seeds {
  EntitySet set;
  nlohmann::json meta;
};

Seeds select_seeds(const BenchmarkSpec& spec) {
  const System& system = *spec.system;
  Seeds out;
  if (spec.initial_failures) {
    out.set = system.make_set(*spec.initial_failures);
    out.meta = {{"selection", "explicit"}};
    return out;
  }
  if (spec.vulnerable_k) {
    auto v = k_most_vulnerable(system, *spec.vulnerable_k, spec.search_cap);
    out.set = v.entities;
    out.meta = {{"selection", "k-most-vulnerable"},
                {"K", *spec.vulnerable_k},
                {"greedy_fallback", v.greedy_fallback}};
    return out;
  }
  bool fallback = false;
  std::size_t k = 1;
  for (; k <= system.size(); ++k) {
    auto v = k_most_vulnerable(system, k, spec.search_cap);
    fallback = fallback || v.greedy_fallback;
    if (2 * v.killed >= system.size()) {
      out.set = v.entities;
      break;
    }
  }
  out.meta = {{"selection", "auto-half"}, {"K", k},
              {"greedy_fallback", fallback}};
  return out;
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkSpec& spec) {
  using Clock = std::chrono::steady_clock;
  const System& system = *spec.system;
  BenchmarkReport report;
  const Seeds seeds = select_seeds(spec);
  const EntitySet killed = kill_set(system, seeds.set);
  const IdrClass cls = classify(system);
  const std::string mode = to_string(spec.mode);

  std::vector<std::size_t> sweep = spec.sweep;
  if (spec.mode == BenchMode::kTeh && spec.protect) {
    sweep = {spec.protect->size()};
  } else if (sweep.empty()) {
    sweep = spec.mode == BenchMode::kEnh
                ? default_sweep(1, std::max<std::size_t>(seeds.set.count(), 2) - 1)
                : default_sweep(1, killed.count());
  }

  for (std::size_t value : sweep) {
    if (value == 0) throw std::invalid_argument("sweep values must be positive");
    if (spec.mode == BenchMode::kTeh && !spec.protect &&
        value > killed.count()) {
      throw std::invalid_argument(
          "protect-set size " + std::to_string(value) +
          " exceeds the " + std::to_string(killed.count()) + " failed entities");
    }
  }

  report.metadata = {
      {"tool_version", kToolVersion},
      {"dataset", spec.dataset},
      {"mode", mode},
      {"entities", system.size()},
      {"idr_class", to_string(cls)},
      {"initial_failures", system.sorted_labels(seeds.set)},
      {"seed_selection", seeds.meta},
      {"baseline_failed", killed.count()},
      {"rng_seed", spec.rng_seed},
      {"search_cap", spec.search_cap},
      {"sweep", sweep},
      {"methods", spec.methods},
  };
  std::vector<std::string> caps_hit;

  for (std::size_t value : sweep) {
    EnhInstance enh{&system, seeds.set, value, std::nullopt};
    TehInstance teh{&system, seeds.set, system.empty_set()};
    if (spec.mode == BenchMode::kTeh) {
      teh.protect = spec.protect
                        ? system.make_set(*spec.protect)
                        : sample_subset(system, killed, value,
                                        spec.rng_seed + value);
    }
    std::optional<double> exact_quality;
    const std::size_t first_row = report.rows.size();
    for (const std::string& method : spec.methods) {
      BenchRow row{spec.dataset, mode, method, value, std::nullopt, 0.0, {}, {}};
      try {
        const auto start = Clock::now();
        std::optional<SolveReport> solved;
        if (method == "exact") {
          solved = spec.mode == BenchMode::kEnh
                       ? solve_enh_exact(enh, spec.search_cap)
                       : solve_teh_exact(teh, spec.search_cap);
        } else if (method == "heuristic") {
          solved = spec.mode == BenchMode::kEnh ? solve_enh_heuristic(enh)
                                                : solve_teh_heuristic(teh);
        } else if (method == "case1") {
          if (cls != IdrClass::kCaseI) {
            row.skipped = "system is not case1";
          } else {
            solved = spec.mode == BenchMode::kEnh ? solve_enh_case1(enh)
                                                  : solve_teh_case1(teh);
          }
        } else if (method == "case2") {
          if (cls == IdrClass::kGeneral) {
            row.skipped = "system is not case1 or case2";
          } else {
            solved = spec.mode == BenchMode::kEnh ? solve_enh_case2_maxcov(enh)
                                                  : solve_teh_case2_setcover(teh);
          }
        } else if (method == "ilp-export") {
          const IlpEncoding enc = spec.mode == BenchMode::kEnh
                                      ? encode_enh_ilp(enh)
                                      : encode_teh_ilp(teh);
          std::ostringstream lp;
          export_lp(enc, lp);
          if (spec.lp_dir) {
            std::filesystem::create_directories(*spec.lp_dir);
            const auto path = std::filesystem::path(*spec.lp_dir) /
                              (spec.dataset + "_" + mode + "_" +
                               std::to_string(value) + ".lp");
            std::ofstream(path) << lp.str();
          }
          row.quality = static_cast<double>(enc.constraints.size());
        } else {
          row.skipped = "unknown method";
        }
        row.seconds =
            std::chrono::duration<double>(Clock::now() - start).count();
        if (solved) {
          row.quality = static_cast<double>(spec.mode == BenchMode::kEnh
                                                ? solved->protected_count
                                                : solved->plan.count());
          row.plan = system.sorted_labels(solved->plan);
          if (method == "exact") exact_quality = row.quality;
        }
      } catch (const SearchSpaceExceeded& e) {
        row.skipped = "search cap exceeded";
        caps_hit.push_back(method + "@" + std::to_string(value));
      } catch (const std::exception& e) {
        row.skipped = e.what();
      }
      if (!row.skipped.empty()) row.seconds = 0.0;
      report.rows.push_back(std::move(row));
    }
    if (!exact_quality) continue;
    for (std::size_t r = first_row; r < report.rows.size(); ++r) {
      const BenchRow& row = report.rows[r];
      if (row.method == "exact" || row.method == "ilp-export" || !row.quality) {
        continue;
      }
      const bool beats = spec.mode == BenchMode::kEnh
                             ? *row.quality > *exact_quality
                             : *row.quality < *exact_quality;
      if (beats) {
        std::ostringstream msg;
        msg << row.method << " beats exact at " << mode << " sweep " << value
            << ": " << *row.quality << " vs " << *exact_quality;
        report.violations.push_back(msg.str());
      }
    }
  }
  report.metadata["caps_hit"] = caps_hit;
  return report;
}

std::string report_csv(const BenchmarkReport& report, bool with_timing) {
  std::ostringstream out;
  out << "dataset,mode,method,sweep,quality,seconds\n";
  for (const auto& row : report.rows) {
    out << row.dataset << ',' << row.mode << ',' << row.method << ','
        << row.sweep << ',';
    if (!row.skipped.empty()) {
      std::string reason = row.skipped;
      std::replace(reason.begin(), reason.end(), ',', ';');
      out << "skipped:" << reason;
    } else if (row.quality) {
      out << *row.quality;
    }
    out << ',';
    if (with_timing) out << row.seconds;
    out << '\n';
  }
  return out.str();
}

nlohmann::json report_json(const BenchmarkReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r = {{"dataset", row.dataset}, {"mode", row.mode},
                        {"method", row.method},   {"sweep", row.sweep},
                        {"seconds", row.seconds}, {"hardened", row.plan}};
    r["quality"] = row.quality ? nlohmann::json(*row.quality) : nlohmann::json();
    if (!row.skipped.empty()) r["skipped"] = row.skipped;
    rows.push_back(std::move(r));
  }
  return {{"metadata", report.metadata},
          {"rows", rows},
          {"violations", report.violations}};
}

}  // namespace iim
