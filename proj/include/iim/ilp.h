#ifndef IIM_ILP_H_
#define IIM_ILP_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "iim/cascade.h"
#include "iim/problem.h"

namespace iim {

// Variable families of the hardening ILP:
//   g_i    1 iff entity i fails initially (fixed by equality rows)
//   q_i    1 iff entity i is hardened
//   x_i_d  1 iff entity i is failed at time d, d in [0, n-1]
//   c_a_d  1 iff auxiliary minterm a has a failed member at time d-1,
//          d in [1, n-1]
enum class VarKind { kG, kQ, kX, kC };

struct IlpVar {
  std::string name;
  VarKind kind;
  std::uint32_t entity = 0;  // g, q, x
  std::uint32_t aux = 0;     // c
  std::uint32_t time = 0;    // x, c
};

struct LinearTerm {
  std::int64_t coef;
  std::uint32_t var;
};

enum class Sense { kLe, kGe, kEq };

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense;
  std::int64_t rhs;
};

// A multi-entity minterm of a multi-minterm IDR, replaced by c variables.
struct AuxMinterm {
  EntityId target;
  std::uint32_t minterm;  // position inside the target's IDR
  std::vector<EntityId> members;
};

struct IlpEncoding {
  std::size_t entity_count = 0;
  std::size_t time_horizon = 0;  // n - 1
  EntitySet initial_failed;
  std::vector<IlpVar> vars;
  std::vector<AuxMinterm> aux;
  std::vector<LinearTerm> objective;  // minimized
  std::vector<LinearConstraint> constraints;

  std::uint32_t g(EntityId e) const { return e.index; }
  std::uint32_t q(EntityId e) const {
    return static_cast<std::uint32_t>(entity_count + e.index);
  }
  std::uint32_t x(EntityId e, std::size_t t) const {
    return static_cast<std::uint32_t>(2 * entity_count +
                                      e.index * (time_horizon + 1) + t);
  }
  // t in [1, time_horizon]
  std::uint32_t c(std::size_t aux_index, std::size_t t) const {
    return static_cast<std::uint32_t>(
        2 * entity_count + entity_count * (time_horizon + 1) +
        aux_index * time_horizon + (t - 1));
  }
  std::size_t count(VarKind kind) const;
};

// Objective: min sum_i x_i_(n-1) subject to the budget row, initial-failure
// rows, monotonicity and the cascade rows for every IDR.
IlpEncoding encode_enh_ilp(const EnhInstance& inst);

// Objective: min sum_i q_i; no budget row; x_p_(n-1) = 0 for p in P.
IlpEncoding encode_teh_ilp(const TehInstance& inst);

// CPLEX LP text. Output is a pure function of the encoding.
void export_lp(const IlpEncoding& enc, std::ostream& out);

// 0-1 assignment induced by a cascade trace: x_i_d = [i in steps[min(d,T)]],
// c_a_d = [some member in steps[min(d-1,T)]], q from the plan, g from E'.
// Throws std::invalid_argument on dimension mismatch.
std::vector<std::int64_t> trace_assignment(const IlpEncoding& enc,
                                           const CascadeTrace& trace,
                                           const EntitySet& plan);

bool satisfies(const LinearConstraint& row,
               const std::vector<std::int64_t>& values);

std::int64_t objective_value(const IlpEncoding& enc,
                             const std::vector<std::int64_t>& values);

bool check_trace_feasible(const IlpEncoding& enc, const CascadeTrace& trace,
                          const EntitySet& plan);

// Names of the rows violated by the trace assignment.
std::vector<std::string> violated_rows(const IlpEncoding& enc,
                                       const std::vector<std::int64_t>& values);

}  // namespace iim

#endif  // IIM_ILP_H_
