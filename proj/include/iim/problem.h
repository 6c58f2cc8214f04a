#ifndef IIM_PROBLEM_H_
#define IIM_PROBLEM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iim/system.h"

namespace iim {

// Entity Hardening: pick at most `budget` entities to harden so that the
// number of protected entities is maximal when `initial_failed` fails.
struct EnhInstance {
  const System* system = nullptr;
  EntitySet initial_failed;
  std::size_t budget = 0;
  // Decision version: is failed_with_plan <= threshold achievable?
  std::optional<std::size_t> decision_threshold;
};

// Targeted Entity Hardening: smallest hardening set that keeps every member
// of `protect` operational when `initial_failed` fails.
struct TehInstance {
  const System* system = nullptr;
  EntitySet initial_failed;
  EntitySet protect;
};

struct SolveReport {
  EntitySet plan;
  std::size_t baseline_failed = 0;
  std::size_t failed_with_plan = 0;
  std::size_t protected_count = 0;  // baseline_failed - failed_with_plan
  std::string method;
  double wall_time = 0.0;  // seconds
  // Flags such as "fallback-initial-failures" or "protect-dropped:<label>".
  std::vector<std::string> notes;
  // Set for ENH when the instance carries a decision threshold.
  std::optional<bool> meets_threshold;
};

class SearchSpaceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WrongClass : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Default cap on the number of candidate subsets an exhaustive search may
// evaluate.
inline constexpr std::uint64_t kDefaultSearchCap = std::uint64_t{1} << 26;

// Fills baseline/with-plan/protected counts by running the cascade.
void evaluate_plan(const System& system, const EntitySet& initial_failed,
                   SolveReport& report);

// Members of `protect` that fail without hardening; the rest are reported in
// `dropped`.
EntitySet effective_protect_set(const TehInstance& inst,
                                std::vector<std::string>* dropped_notes);

}  // namespace iim

#endif  // IIM_PROBLEM_H_
