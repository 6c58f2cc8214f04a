#include "iim/exact.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "iim/cascade.h"

namespace iim {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays exact because r * (n-k+i) is divisible by i.
    const std::uint64_t num = n - k + i;
    if (r > kMax / num) return kMax;
    r = r * num / i;
  }
  return r;
}

std::vector<EntityId> by_label(const System& system, const EntitySet& set) {
  std::vector<EntityId> out;
  for (auto i = set.find_first(); i != EntitySet::npos; i = set.find_next(i)) {
    out.push_back(EntityId{static_cast<std::uint32_t>(i)});
  }
  std::sort(out.begin(), out.end(), [&](EntityId a, EntityId b) {
    return system.label(a) < system.label(b);
  });
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Calls visit(indices) for every size-`size` combination of [0, n) in
// lexicographic order; stops early when visit returns false.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t size, Visit&& visit) {
  if (size > n) return;
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (!visit(idx)) return;
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void charge(std::uint64_t& used, std::uint64_t more, std::uint64_t cap) {
  if (more > cap || used > cap - more) {
    throw SearchSpaceExceeded("exhaustive search needs more than " +
                              std::to_string(cap) + " candidate subsets");
  }
  used += more;
}

}  // namespace

SolveReport solve_enh_exact(const EnhInstance& inst, std::uint64_t cap) {
  const auto start = Clock::now();
  const System& system = *inst.system;
  SolveReport report;
  report.method = "exact";
  if (inst.budget >= inst.initial_failed.count()) {
    report.plan = inst.initial_failed;
    report.notes.push_back("budget-covers-initial-failures");
  } else {
    const EntitySet killed = kill_set(system, inst.initial_failed);
    const auto candidates = by_label(system, killed);
    const std::size_t max_size = std::min(inst.budget, candidates.size());
    std::uint64_t used = 0;
    for (std::size_t s = 0; s <= max_size; ++s) {
      charge(used, binomial(candidates.size(), s), cap);
    }
    std::size_t best_failed = killed.count();
    EntitySet best = system.empty_set();
    EntitySet plan = system.empty_set();
    for (std::size_t s = 1; s <= max_size; ++s) {
      for_each_combination(candidates.size(), s, [&](const auto& idx) {
        plan.reset();
        for (auto i : idx) plan.set(candidates[i].index);
        const auto failed =
            final_failed(system, inst.initial_failed, plan).count();
        if (failed < best_failed) {
          best_failed = failed;
          best = plan;
        }
        return true;
      });
    }
    report.plan = std::move(best);
  }
  evaluate_plan(system, inst.initial_failed, report);
  if (inst.decision_threshold) {
    report.meets_threshold = report.failed_with_plan <= *inst.decision_threshold;
  }
  report.wall_time = seconds_since(start);
  return report;
}

SolveReport solve_teh_exact(const TehInstance& inst, std::uint64_t cap) {
  const auto start = Clock::now();
  const System& system = *inst.system;
  SolveReport report;
  report.method = "exact";
  const EntitySet targets = effective_protect_set(inst, &report.notes);
  report.plan = system.empty_set();
  if (targets.any()) {
    const EntitySet killed = kill_set(system, inst.initial_failed);
    const auto candidates = by_label(system, killed);
    std::uint64_t used = 0;
    bool found = false;
    EntitySet plan = system.empty_set();
    for (std::size_t s = 1; s <= candidates.size() && !found; ++s) {
      charge(used, binomial(candidates.size(), s), cap);
      for_each_combination(candidates.size(), s, [&](const auto& idx) {
        plan.reset();
        for (auto i : idx) plan.set(candidates[i].index);
        if (!final_failed(system, inst.initial_failed, plan)
                 .intersects(targets)) {
          found = true;
          report.plan = plan;
          return false;
        }
        return true;
      });
    }
  }
  evaluate_plan(system, inst.initial_failed, report);
  report.wall_time = seconds_since(start);
  return report;
}

VulnerableSet k_most_vulnerable(const System& system, std::size_t k,
                                std::uint64_t cap) {
  VulnerableSet out;
  out.entities = system.empty_set();
  const auto all = by_label(system, system.full_set());
  k = std::min(k, all.size());
  if (binomial(all.size(), k) <= cap) {
    EntitySet seed = system.empty_set();
    bool first = true;
    for_each_combination(all.size(), k, [&](const auto& idx) {
      seed.reset();
      for (auto i : idx) seed.set(all[i].index);
      const auto killed = kill_set(system, seed).count();
      if (first || killed > out.killed) {
        first = false;
        out.killed = killed;
        out.entities = seed;
      }
      return true;
    });
    return out;
  }
  out.greedy_fallback = true;
  EntitySet seed = system.empty_set();
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best_kill = 0;
    std::optional<EntityId> best;
    for (EntityId e : all) {
      if (seed.test(e.index)) continue;
      seed.set(e.index);
      const auto killed = kill_set(system, seed).count();
      seed.reset(e.index);
      if (!best || killed > best_kill) {
        best = e;
        best_kill = killed;
      }
    }
    seed.set(best->index);
    out.killed = best_kill;
  }
  out.entities = std::move(seed);
  return out;
}

}  // namespace iim
