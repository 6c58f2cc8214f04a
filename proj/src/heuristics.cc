#include "iim/heuristics.h"

#include <chrono>

#include "iim/cascade.h"
#include "iim/exact.h"

namespace iim {

namespace {

// Minterm hits of `e` in the system left after deleting the entities in
// `gone` (entities that can no longer fail): their IDRs disappear, they
// leave every minterm, and a pinned target whose minterm empties keeps
// failing but loses its IDR.
template <typename Keep>
Metric hit_value(const System& system, EntityId e, const EntitySet* gone,
                 const EntitySet* pinned, Keep&& keep_target) {
  Metric total = 0;
  if (gone && gone->test(e.index)) return total;
  const auto idrs = system.idrs();
  for (const auto& occ : system.occurrences(e)) {
    const Idr& idr = idrs[occ.idr_pos];
    if (!keep_target(idr.target.index)) continue;
    const auto local = occ.minterm - system.minterm_base(occ.idr_pos);
    std::int64_t size =
        static_cast<std::int64_t>(idr.minterms[local].members.size());
    if (gone) {
      if (gone->test(idr.target.index)) continue;
      bool emptied = false;
      for (const Minterm& m : idr.minterms) {
        std::size_t left = 0;
        for (EntityId x : m.members) left += gone->test(x.index) ? 0 : 1;
        if (left == 0) emptied = true;
        if (&m == &idr.minterms[local]) size = static_cast<std::int64_t>(left);
      }
      if (emptied && pinned && pinned->test(idr.target.index)) continue;
    }
    total += Metric(1, size);
  }
  return total;
}

// PS(c) for every killed c, where `hardened` is already protected.
std::vector<EntitySet> all_protection_sets(const System& system,
                                           const EntitySet& seed,
                                           const EntitySet& hardened,
                                           const EntitySet& killed) {
  // Entries for entities outside `killed` stay empty and are never read.
  std::vector<EntitySet> ps(system.size());
  EntitySet with = hardened;
  for (auto i = killed.find_first(); i != EntitySet::npos;
       i = killed.find_next(i)) {
    with.set(i);
    ps[i] = killed - final_failed(system, seed, with);
    with.reset(i);
  }
  return ps;
}

std::vector<EntitySet> all_protection_sets(const System& system,
                                           const EntitySet& seed,
                                           const EntitySet& killed) {
  return all_protection_sets(system, seed, system.empty_set(), killed);
}

Metric cumulative(const System& system, EntityId e,
                  const std::vector<EntitySet>& ps, const EntitySet* scope,
                  const EntitySet* gone = nullptr,
                  const EntitySet* pinned = nullptr) {
  Metric total = 0;
  const EntitySet& mine = ps[e.index];
  for (auto x = mine.find_first(); x != EntitySet::npos;
       x = mine.find_next(x)) {
    const EntitySet& excluded = ps[x];
    total += hit_value(system, EntityId{static_cast<std::uint32_t>(x)}, gone,
                       pinned, [&](std::size_t t) {
                         if (excluded.test(t)) return false;
                         return scope == nullptr || scope->test(t);
                       });
  }
  return total;
}

using Clock = std::chrono::steady_clock;

// Greedy state shared by both heuristics. Hardening the plan H leaves a
// residual system that cascades exactly like the original one with H
// hardened, so the residual is kept as masks instead of a rebuilt System:
// `killed` = failed(E', H), everything else can no longer fail.
struct Residual {
  const System* system;
  EntitySet initial;
  EntitySet plan;
  EntitySet killed;
  EntitySet gone;
  EntitySet seeds;  // initial failures not hardened

  std::vector<EntityId> label_order;

  Residual(const System& s, const EntitySet& e0)
      : system(&s), initial(e0), plan(s.empty_set()),
        label_order(by_label(s, s.full_set())) {
    refresh();
  }

  void refresh() {
    killed = final_failed(*system, initial, plan);
    gone = ~killed;
    seeds = initial - plan;
  }

  std::vector<EntitySet> protection_sets() const {
    return all_protection_sets(*system, initial, plan, killed);
  }

  Metric tie(EntityId c, const std::vector<EntitySet>& ps,
             const EntitySet* scope) const {
    return cumulative(*system, c, ps, scope, &gone, &seeds);
  }

  void harden(EntityId e) {
    plan.set(e.index);
    refresh();
  }

  ReducedSystem reduced() const {
    return remove_entities(*system, gone, seeds);
  }
};

struct Choice {
  EntityId entity;
  EntitySet protects;
};

// Picks max score, then max tie metric, then smallest label. `score` returns
// the primary key; `tie` is only evaluated on primary-key ties.
template <typename Score, typename Tie>
std::optional<Choice> select(const std::vector<EntityId>& label_order,
                             const EntitySet& killed,
                             const std::vector<EntitySet>& ps, Score&& score,
                             Tie&& tie) {
  std::optional<EntityId> best;
  std::size_t best_score = 0;
  Metric best_tie;
  bool have_tie = false;
  for (EntityId c : label_order) {
    if (!killed.test(c.index)) continue;
    const std::size_t s = score(ps[c.index]);
    if (!best || s > best_score) {
      best = c;
      best_score = s;
      have_tie = false;
      continue;
    }
    if (s < best_score) continue;
    if (!have_tie) {
      best_tie = tie(*best);
      have_tie = true;
    }
    const Metric t = tie(c);
    if (t > best_tie) {
      best = c;
      best_tie = t;
    }
  }
  if (!best) return std::nullopt;
  return Choice{*best, ps[best->index]};
}

}  // namespace

Metric fmhv(const System& system, EntityId e, const EntitySet& excluded) {
  return hit_value(system, e, nullptr, nullptr,
                   [&](std::size_t t) { return !excluded.test(t); });
}

Metric cfmhv(const System& system, EntityId e, const EntitySet& seed) {
  const EntitySet killed = kill_set(system, seed);
  return cumulative(system, e, all_protection_sets(system, seed, killed),
                    nullptr);
}

Metric pfmhv(const System& system, EntityId e, const EntitySet& scope) {
  return hit_value(system, e, nullptr, nullptr,
                   [&](std::size_t t) { return scope.test(t); });
}

Metric pcfmhv(const System& system, EntityId e, const EntitySet& seed,
              const EntitySet& scope) {
  const EntitySet killed = kill_set(system, seed);
  const EntitySet active = scope & killed;
  return cumulative(system, e, all_protection_sets(system, seed, killed),
                    &active);
}

MintermMetricTable metric_table(const System& system, const EntitySet& seed,
                                const std::optional<EntitySet>& scope) {
  MintermMetricTable table;
  table.scope = scope;
  const EntitySet killed = kill_set(system, seed);
  const auto ps = all_protection_sets(system, seed, killed);
  const EntitySet active = scope ? (*scope & killed) : killed;
  const EntitySet none = system.empty_set();
  for (std::uint32_t i = 0; i < system.size(); ++i) {
    const EntityId e{i};
    if (scope) {
      table.hit.push_back(pfmhv(system, e, active));
      table.cumulative.push_back(cumulative(system, e, ps, &active));
    } else {
      table.hit.push_back(fmhv(system, e, none));
      table.cumulative.push_back(cumulative(system, e, ps, nullptr));
    }
  }
  return table;
}

SolveReport solve_enh_heuristic(const EnhInstance& inst) {
  const auto start = Clock::now();
  const System& system = *inst.system;
  SolveReport report;
  report.method = "heuristic";
  report.plan = system.empty_set();

  Residual res(system, inst.initial_failed);
  while (res.plan.count() < inst.budget && res.killed.any()) {
    const auto ps = res.protection_sets();
    auto choice = select(
        res.label_order, res.killed, ps, [](const EntitySet& p) { return p.count(); },
        [&](EntityId c) { return res.tie(c, ps, nullptr); });
    res.harden(choice->entity);
  }
  report.plan = res.plan;
  const std::size_t initial = inst.initial_failed.count();
  if (initial > 0 && report.plan.count() >= initial) {
    report.plan = inst.initial_failed;
    report.notes.push_back("fallback-initial-failures");
  }
  evaluate_plan(system, inst.initial_failed, report);
  if (inst.decision_threshold) {
    report.meets_threshold = report.failed_with_plan <= *inst.decision_threshold;
  }
  report.wall_time =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

SolveReport solve_teh_heuristic(const TehInstance& inst) {
  const auto start = Clock::now();
  const System& system = *inst.system;
  SolveReport report;
  report.method = "heuristic";
  report.plan = system.empty_set();
  EntitySet remaining = effective_protect_set(inst, &report.notes);

  Residual res(system, inst.initial_failed);
  while (remaining.any()) {
    const auto ps = res.protection_sets();
    auto choice = select(
        res.label_order, res.killed, ps,
        [&](const EntitySet& p) { return (p & remaining).count(); },
        [&](EntityId c) { return res.tie(c, ps, &remaining); });
    if (!choice || !choice->protects.intersects(remaining)) {
      // No single hardening saves a remaining target; finish exactly on the
      // residual instance.
      const ReducedSystem rest = res.reduced();
      res.plan |= solve_teh_exact({&rest.system, res.seeds, remaining}).plan;
      report.notes.push_back("residual-exact-fallback");
      break;
    }
    remaining -= choice->protects;
    res.harden(choice->entity);
  }
  report.plan = res.plan;
  const std::size_t initial = inst.initial_failed.count();
  if (initial > 0 && report.plan.count() >= initial &&
      report.plan != inst.initial_failed) {
    report.plan = inst.initial_failed;
    report.notes.push_back("fallback-initial-failures");
  }
  evaluate_plan(system, inst.initial_failed, report);
  report.wall_time =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace iim
