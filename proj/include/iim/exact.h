#ifndef IIM_EXACT_H_
#define IIM_EXACT_H_

#include <cstdint>
#include <vector>

#include "iim/problem.h"

namespace iim {

// Exhaustive ENH search over subsets of KillSet(E') of size <= budget.
// Ties: fewer hardened entities, then the lexicographically smallest sorted
// label sequence. budget >= |E'| short-circuits to hardening E'.
// Throws SearchSpaceExceeded when more than `cap` subsets would be scored.
SolveReport solve_enh_exact(const EnhInstance& inst,
                            std::uint64_t cap = kDefaultSearchCap);

// Minimum-cardinality TEH plan by increasing subset size; the first subset
// in lexicographic label order that keeps all of P operational wins.
SolveReport solve_teh_exact(const TehInstance& inst,
                            std::uint64_t cap = kDefaultSearchCap);

struct VulnerableSet {
  EntitySet entities;
  std::size_t killed = 0;  // |KillSet(entities)|
  bool greedy_fallback = false;
};

// K-subset whose initial failure maximizes the kill set. Falls back to greedy
// marginal growth when C(|E|, K) exceeds `cap`.
VulnerableSet k_most_vulnerable(const System& system, std::size_t k,
                                std::uint64_t cap = kDefaultSearchCap);

// Saturating binomial coefficient.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Entities of `set` ordered by label.
std::vector<EntityId> by_label(const System& system, const EntitySet& set);

}  // namespace iim

#endif  // IIM_EXACT_H_
