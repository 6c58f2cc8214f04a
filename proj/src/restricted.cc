#include "iim/restricted.h"

#include <chrono>
#include <stdexcept>
#include <vector>

#include "iim/cascade.h"
#include "iim/exact.h"

namespace iim {

IdrClass classify(const System& system) {
  bool case1 = true;
  for (const Idr& idr : system.idrs()) {
    for (const Minterm& m : idr.minterms) {
      if (m.members.size() != 1) return IdrClass::kGeneral;
    }
    if (idr.minterms.size() != 1) case1 = false;
  }
  return case1 ? IdrClass::kCaseI : IdrClass::kCaseII;
}

const char* to_string(IdrClass c) {
  switch (c) {
    case IdrClass::kCaseI:
      return "case1";
    case IdrClass::kCaseII:
      return "case2";
    case IdrClass::kGeneral:
      return "general";
  }
  return "general";
}

IdrClass idr_class_from_string(const std::string& name) {
  if (name == "case1") return IdrClass::kCaseI;
  if (name == "case2") return IdrClass::kCaseII;
  if (name == "general") return IdrClass::kGeneral;
  throw std::invalid_argument("unknown IDR class '" + name + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

void require(const System& system, bool allow_case2, const char* who) {
  const IdrClass c = classify(system);
  if (c == IdrClass::kCaseI) return;
  if (allow_case2 && c == IdrClass::kCaseII) return;
  throw WrongClass(std::string(who) + " requires " +
                   (allow_case2 ? "case1 or case2" : "case1") +
                   " IDRs, got " + to_string(c));
}

struct Candidate {
  EntityId entity;
  EntitySet set;
};

std::vector<Candidate> protection_candidates(const System& system,
                                             const EntitySet& seed,
                                             const EntitySet& pool) {
  const EntitySet killed = kill_set(system, seed);
  std::vector<Candidate> out;
  for (EntityId e : by_label(system, pool & killed)) {
    out.push_back({e, protection_set(system, e, seed, killed)});
  }
  return out;
}

// Index of max gain(c) (ties: larger |set|, then earlier = smaller label);
// nullopt when every gain is zero.
template <typename Gain>
std::optional<std::size_t> pick(const std::vector<Candidate>& cands,
                                Gain&& gain) {
  std::optional<std::size_t> best;
  std::size_t best_gain = 0, best_size = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const std::size_t g = gain(cands[i]);
    const std::size_t s = cands[i].set.count();
    if (g == 0) continue;
    if (!best || g > best_gain || (g == best_gain && s > best_size)) {
      best = i;
      best_gain = g;
      best_size = s;
    }
  }
  return best;
}

SolveReport finish(const EnhInstance& inst, SolveReport report,
                   Clock::time_point start) {
  evaluate_plan(*inst.system, inst.initial_failed, report);
  if (inst.decision_threshold) {
    report.meets_threshold = report.failed_with_plan <= *inst.decision_threshold;
  }
  report.wall_time =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

SolveReport finish(const TehInstance& inst, SolveReport report,
                   Clock::time_point start) {
  evaluate_plan(*inst.system, inst.initial_failed, report);
  report.wall_time =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace

SolveReport solve_enh_case1(const EnhInstance& inst) {
  const auto start = Clock::now();
  const System& system = *inst.system;
  require(system, false, "solve_enh_case1");
  SolveReport report;
  report.method = "case1";
  report.plan = system.empty_set();
  if (inst.budget >= inst.initial_failed.count()) {
    report.plan = inst.initial_failed;
    report.notes.push_back("budget-covers-initial-failures");
    return finish(inst, std::move(report), start);
  }
  auto cands =
      protection_candidates(system, inst.initial_failed, inst.initial_failed);
  for (std::size_t round = 0; round < inst.budget; ++round) {
    auto best = pick(cands, [](const Candidate& c) { return c.set.count(); });
    if (!best) break;
    const EntitySet chosen = cands[*best].set;
    report.plan.set(cands[*best].entity.index);
    for (auto& c : cands) c.set -= chosen;
  }
  return finish(inst, std::move(report), start);
}

SolveReport solve_teh_case1(const TehInstance& inst) {
  const auto start = Clock::now();
  const System& system = *inst.system;
  require(system, false, "solve_teh_case1");
  SolveReport report;
  report.method = "case1";
  report.plan = system.empty_set();
  EntitySet remaining = effective_protect_set(inst, &report.notes);
  auto cands =
      protection_candidates(system, inst.initial_failed, system.full_set());
  while (remaining.any()) {
    auto best = pick(cands, [&](const Candidate& c) {
      return (c.set & remaining).count();
    });
    if (!best) throw std::logic_error("case1 TEH: uncoverable target");
    const EntitySet chosen = cands[*best].set;
    report.plan.set(cands[*best].entity.index);
    remaining -= chosen;
    for (auto& c : cands) c.set -= chosen;
  }
  return finish(inst, std::move(report), start);
}

SolveReport solve_enh_case2_maxcov(const EnhInstance& inst) {
  const auto start = Clock::now();
  const System& system = *inst.system;
  require(system, true, "solve_enh_case2_maxcov");
  SolveReport report;
  report.method = "case2";
  report.plan = system.empty_set();
  if (inst.budget >= inst.initial_failed.count()) {
    report.plan = inst.initial_failed;
    report.notes.push_back("budget-covers-initial-failures");
    return finish(inst, std::move(report), start);
  }
  const auto cands =
      protection_candidates(system, inst.initial_failed, system.full_set());
  EntitySet covered = system.empty_set();
  for (std::size_t round = 0; round < inst.budget; ++round) {
    auto best = pick(cands, [&](const Candidate& c) {
      return (c.set - covered).count();
    });
    if (!best) break;
    report.plan.set(cands[*best].entity.index);
    covered |= cands[*best].set;
  }
  report = finish(inst, std::move(report), start);
  if (covered.count() != report.protected_count) {
    report.notes.push_back("coverage-differs-from-cascade");
  }
  return report;
}

SolveReport solve_teh_case2_setcover(const TehInstance& inst) {
  const auto start = Clock::now();
  const System& system = *inst.system;
  require(system, true, "solve_teh_case2_setcover");
  SolveReport report;
  report.method = "case2";
  report.plan = system.empty_set();
  EntitySet uncovered = effective_protect_set(inst, &report.notes);
  auto cands =
      protection_candidates(system, inst.initial_failed, system.full_set());
  for (auto& c : cands) c.set &= uncovered;
  while (uncovered.any()) {
    auto best = pick(cands, [&](const Candidate& c) {
      return (c.set & uncovered).count();
    });
    // Every target t is in PS(t), so a cover always exists.
    if (!best) throw std::logic_error("case2 TEH: uncoverable target");
    report.plan.set(cands[*best].entity.index);
    uncovered -= cands[*best].set;
  }
  return finish(inst, std::move(report), start);
}

LaminarCheck check_laminar_protection(const System& system,
                                      const EntitySet& seed) {
  LaminarCheck out;
  auto scan = [&](const std::vector<Candidate>& family, const char* name) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t j = i + 1; j < family.size(); ++j) {
        const EntitySet& a = family[i].set;
        const EntitySet& b = family[j].set;
        if (!a.intersects(b) || a.is_subset_of(b) || b.is_subset_of(a)) {
          continue;
        }
        out.laminar = false;
        out.violation = std::make_pair(family[i].entity, family[j].entity);
        out.family = name;
        return false;
      }
    }
    return true;
  };
  if (!scan(protection_candidates(system, seed, system.full_set()),
            "protection")) {
    return out;
  }
  std::vector<Candidate> kills;
  for (EntityId e : by_label(system, seed)) {
    EntitySet single = system.empty_set();
    single.set(e.index);
    kills.push_back({e, kill_set(system, single)});
  }
  scan(kills, "kill");
  return out;
}

}  // namespace iim
