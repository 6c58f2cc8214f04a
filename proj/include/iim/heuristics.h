#ifndef IIM_HEURISTICS_H_
#define IIM_HEURISTICS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "iim/problem.h"

namespace iim {

// Exact sums of 1/|minterm|; ties compare exactly.
using Metric = boost::rational<std::int64_t>;

// Fractional minterm hit value: sum of 1/|s| over minterms s containing e,
// skipping IDRs whose target is in `excluded`.
Metric fmhv(const System& system, EntityId e, const EntitySet& excluded);

// Sum over x in PS(e|seed) of fmhv(x, PS(x|seed)).
Metric cfmhv(const System& system, EntityId e, const EntitySet& seed);

// Prioritized variant: only IDRs whose target is in `scope` (callers pass the
// non-operational members of P).
Metric pfmhv(const System& system, EntityId e, const EntitySet& scope);

// Sum over x in PS(e|seed) of pfmhv restricted to
// (scope ∩ KillSet(seed)) \ PS(x|seed).
Metric pcfmhv(const System& system, EntityId e, const EntitySet& seed,
              const EntitySet& scope);

struct MintermMetricTable {
  // Without a scope: FMHV(e, {}) and CFMHV(e). With a scope P:
  // PFMHV(e, P ∩ KillSet) and PCFMHV(e).
  std::vector<Metric> hit;
  std::vector<Metric> cumulative;
  std::optional<EntitySet> scope;
};

MintermMetricTable metric_table(const System& system, const EntitySet& seed,
                                const std::optional<EntitySet>& scope = {});

// Greedy ENH: prune, then repeatedly harden the entity with the largest
// protection set (ties: larger CFMHV, then smaller label) and fold its
// protection set into the residual system.
SolveReport solve_enh_heuristic(const EnhInstance& inst);

// Greedy TEH: like the ENH heuristic but scored by |PS ∩ P| with PCFMHV ties,
// looping until P is empty.
SolveReport solve_teh_heuristic(const TehInstance& inst);

}  // namespace iim

#endif  // IIM_HEURISTICS_H_
