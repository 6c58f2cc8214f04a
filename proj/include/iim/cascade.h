#ifndef IIM_CASCADE_H_
#define IIM_CASCADE_H_

#include <vector>

#include "iim/system.h"

namespace iim {

// Failure state at every time step t = 0..T where T is the first step whose
// state equals its predecessor's (T = 0 when nothing cascades).
struct CascadeTrace {
  std::vector<EntitySet> steps;

  std::size_t fixed_point_time() const { return steps.size() - 1; }
  const EntitySet& final_failed() const { return steps.back(); }
  // -1 for entities that never fail.
  std::vector<int> first_failure_times() const;
  // Failure state at time t, holding the fixed point beyond T.
  const EntitySet& at(std::size_t t) const {
    return steps[std::min(t, steps.size() - 1)];
  }
};

// Synchronous time-stepped simulation. Hardened entities never fail; source
// entities (no IDR) fail only if initially failed.
CascadeTrace cascade(const System& system, const EntitySet& initial_failed,
                     const EntitySet& hardened);

// Same fixed point as cascade(), computed by event-driven propagation in time
// linear in the total minterm size. Solvers use this one.
EntitySet final_failed(const System& system, const EntitySet& initial_failed,
                       const EntitySet& hardened);

EntitySet kill_set(const System& system, const EntitySet& seed);

// Entities that fail under `seed` but survive when `candidate` is hardened.
EntitySet protection_set(const System& system, EntityId candidate,
                         const EntitySet& seed);
// Same, reusing a precomputed kill_set(system, seed).
EntitySet protection_set(const System& system, EntityId candidate,
                         const EntitySet& seed, const EntitySet& killed);

struct ReducedSystem {
  System system;
  // Entities that can no longer fail. They keep their slot in the entity
  // table but have no IDR and appear in no minterm.
  EntitySet never_failing;
};

// Treats `removed` as permanently operational: drops their IDRs, deletes
// them from remaining minterms and, to a fixpoint, moves every target left
// with an empty minterm into the removed set. Pinned targets (initial
// failures) fail regardless, so they only lose their emptied IDR.
ReducedSystem remove_entities(const System& system, EntitySet removed);
ReducedSystem remove_entities(const System& system, EntitySet removed,
                              const EntitySet& pinned);

// remove_entities with Q = entities outside kill_set(system, seed).
ReducedSystem prune_system(const System& system, const EntitySet& seed);

}  // namespace iim

#endif  // IIM_CASCADE_H_
