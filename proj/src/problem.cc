#include "iim/problem.h"

#include "iim/cascade.h"

namespace iim {

void evaluate_plan(const System& system, const EntitySet& initial_failed,
                   SolveReport& report) {
  report.baseline_failed = kill_set(system, initial_failed).count();
  report.failed_with_plan =
      final_failed(system, initial_failed, report.plan).count();
  report.protected_count = report.baseline_failed - report.failed_with_plan;
}

EntitySet effective_protect_set(const TehInstance& inst,
                                std::vector<std::string>* dropped_notes) {
  const System& system = *inst.system;
  EntitySet killed = kill_set(system, inst.initial_failed);
  EntitySet dropped = inst.protect - killed;
  if (dropped_notes) {
    for (const auto& l : system.sorted_labels(dropped)) {
      dropped_notes->push_back("protect-dropped:" + l);
    }
  }
  return inst.protect & killed;
}

}  // namespace iim
