#include "iim/cascade.h"

#include <cassert>

namespace iim {

std::vector<int> CascadeTrace::first_failure_times() const {
  const std::size_t n = steps.empty() ? 0 : steps.front().size();
  std::vector<int> times(n, -1);
  for (std::size_t t = steps.size(); t-- > 0;) {
    const EntitySet& s = steps[t];
    for (auto i = s.find_first(); i != EntitySet::npos; i = s.find_next(i)) {
      times[i] = static_cast<int>(t);
    }
  }
  return times;
}

namespace {

bool minterm_hit(const Minterm& m, const EntitySet& failed) {
  for (EntityId e : m.members) {
    if (failed.test(e.index)) return true;
  }
  return false;
}

}  // namespace

CascadeTrace cascade(const System& system, const EntitySet& initial_failed,
                     const EntitySet& hardened) {
  assert(initial_failed.size() == system.size());
  assert(hardened.size() == system.size());
  CascadeTrace trace;
  trace.steps.push_back(initial_failed - hardened);
  // Every step before the fixed point adds at least one entity, so the loop
  // runs at most |E| times and T <= |E| - 1 whenever something fails at t=0.
  while (true) {
    const EntitySet& prev = trace.steps.back();
    EntitySet next = prev;
    for (const Idr& idr : system.idrs()) {
      const auto t = idr.target.index;
      if (prev.test(t) || hardened.test(t)) continue;
      bool all_hit = true;
      for (const Minterm& m : idr.minterms) {
        if (!minterm_hit(m, prev)) {
          all_hit = false;
          break;
        }
      }
      if (all_hit) next.set(t);
    }
    if (next == prev) break;
    trace.steps.push_back(std::move(next));
  }
  return trace;
}

EntitySet final_failed(const System& system, const EntitySet& initial_failed,
                       const EntitySet& hardened) {
  EntitySet failed = initial_failed - hardened;
  std::vector<char> minterm_dead(system.minterm_count(), 0);
  std::vector<std::uint32_t> dead_per_idr(system.idrs().size(), 0);
  std::vector<std::uint32_t> queue;
  queue.reserve(system.size());
  for (auto i = failed.find_first(); i != EntitySet::npos;
       i = failed.find_next(i)) {
    queue.push_back(static_cast<std::uint32_t>(i));
  }
  const auto idrs = system.idrs();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& occ : system.occurrences(EntityId{queue[head]})) {
      if (minterm_dead[occ.minterm]) continue;
      minterm_dead[occ.minterm] = 1;
      const Idr& idr = idrs[occ.idr_pos];
      if (++dead_per_idr[occ.idr_pos] < idr.minterms.size()) continue;
      const auto t = idr.target.index;
      if (failed.test(t) || hardened.test(t)) continue;
      failed.set(t);
      queue.push_back(t);
    }
  }
  return failed;
}

EntitySet kill_set(const System& system, const EntitySet& seed) {
  return final_failed(system, seed, system.empty_set());
}

EntitySet protection_set(const System& system, EntityId candidate,
                         const EntitySet& seed) {
  return protection_set(system, candidate, seed, kill_set(system, seed));
}

EntitySet protection_set(const System& system, EntityId candidate,
                         const EntitySet& seed, const EntitySet& killed) {
  if (!killed.test(candidate.index)) return system.empty_set();
  EntitySet plan = system.empty_set();
  plan.set(candidate.index);
  return killed - final_failed(system, seed, plan);
}

ReducedSystem remove_entities(const System& system, EntitySet removed) {
  return remove_entities(system, std::move(removed), system.empty_set());
}

ReducedSystem remove_entities(const System& system, EntitySet removed,
                              const EntitySet& pinned) {
  auto emptied = [&](const Idr& idr) {
    for (const Minterm& m : idr.minterms) {
      bool all_removed = true;
      for (EntityId e : m.members) {
        if (!removed.test(e.index)) {
          all_removed = false;
          break;
        }
      }
      if (all_removed) return true;
    }
    return false;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Idr& idr : system.idrs()) {
      if (removed.test(idr.target.index) || pinned.test(idr.target.index)) {
        continue;
      }
      if (emptied(idr)) {
        removed.set(idr.target.index);
        changed = true;
      }
    }
  }

  ReducedSystem out;
  for (const auto& label : system.labels()) out.system.add_entity(label);
  for (const Idr& idr : system.idrs()) {
    if (removed.test(idr.target.index)) continue;
    // A pinned target fails at t=0 whatever its minterms say.
    if (emptied(idr)) continue;
    Idr kept{idr.target, {}};
    for (const Minterm& m : idr.minterms) {
      Minterm km;
      for (EntityId e : m.members) {
        if (!removed.test(e.index)) km.members.push_back(e);
      }
      kept.minterms.push_back(std::move(km));
    }
    out.system.add_idr(std::move(kept));
  }
  out.never_failing = std::move(removed);
  return out;
}

ReducedSystem prune_system(const System& system, const EntitySet& seed) {
  EntitySet survivors = kill_set(system, seed);
  survivors.flip();
  return remove_entities(system, std::move(survivors), seed);
}

}  // namespace iim
