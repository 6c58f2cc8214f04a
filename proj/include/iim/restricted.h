#ifndef IIM_RESTRICTED_H_
#define IIM_RESTRICTED_H_

#include <optional>
#include <string>
#include <utility>

#include "iim/problem.h"

namespace iim {

// kCaseI: every IDR is a single minterm of size one (e <- f).
// kCaseII: every IDR is a disjunction of size-one minterms.
enum class IdrClass { kCaseI, kCaseII, kGeneral };

IdrClass classify(const System& system);
const char* to_string(IdrClass c);
IdrClass idr_class_from_string(const std::string& name);

// Optimal ENH for Case I. Greedy over protection sets of the initially
// failed entities: take the largest, subtract it from the rest, repeat.
SolveReport solve_enh_case1(const EnhInstance& inst);

// Optimal TEH for Case I: repeatedly harden the entity whose protection set
// covers most of the remaining targets.
SolveReport solve_teh_case1(const TehInstance& inst);

// (1 - 1/e)-approximate ENH for Case I/II via greedy maximum coverage over
// protection sets.
SolveReport solve_enh_case2_maxcov(const EnhInstance& inst);

// (1 + ln|P|)-approximate TEH for Case I/II via greedy set cover of P.
SolveReport solve_teh_case2_setcover(const TehInstance& inst);

struct LaminarCheck {
  bool laminar = true;
  // First offending pair, with the family it came from ("protection" or
  // "kill").
  std::optional<std::pair<EntityId, EntityId>> violation;
  std::string family;
};

// Checks that all protection sets PS(e|seed), e in KillSet(seed), and all
// kill sets KillSet({e}), e in seed, are pairwise nested or disjoint.
LaminarCheck check_laminar_protection(const System& system,
                                      const EntitySet& seed);

}  // namespace iim

#endif  // IIM_RESTRICTED_H_
