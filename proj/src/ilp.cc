#include "iim/ilp.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace iim {

std::size_t IlpEncoding::count(VarKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(vars.begin(), vars.end(),
                    [kind](const IlpVar& v) { return v.kind == kind; }));
}

namespace {

class Builder {
 public:
  Builder(const System& system, const EntitySet& initial_failed)
      : system_(system) {
    const std::size_t n = system.size();
    enc_.entity_count = n;
    enc_.time_horizon = n == 0 ? 0 : n - 1;
    enc_.initial_failed = initial_failed;
    collect_aux();
    declare_vars();
  }

  IlpEncoding take() { return std::move(enc_); }

  void add(std::string name, std::vector<LinearTerm> terms, Sense sense,
           std::int64_t rhs) {
    enc_.constraints.push_back({std::move(name), std::move(terms), sense, rhs});
  }

  // Rows shared by ENH and TEH: fixed g, Constraint Sets 2-4.
  void cascade_rows() {
    const std::size_t n = system_.size();
    const std::size_t horizon = enc_.time_horizon;
    for (std::uint32_t i = 0; i < n; ++i) {
      const EntityId e{i};
      add("fix_" + name_of(enc_.g(e)), {{1, enc_.g(e)}}, Sense::kEq,
          enc_.initial_failed.test(i) ? 1 : 0);
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      const EntityId e{i};
      // x_i0 >= g_i - q_i, and nothing but an initial failure at t = 0.
      add("init_lb_" + label(e),
          {{1, enc_.x(e, 0)}, {-1, enc_.g(e)}, {1, enc_.q(e)}}, Sense::kGe, 0);
      add("init_ub_" + label(e), {{1, enc_.x(e, 0)}, {-1, enc_.g(e)}},
          Sense::kLe, 0);
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      const EntityId e{i};
      for (std::size_t d = 1; d <= horizon; ++d) {
        add("mono_" + label(e) + "_" + std::to_string(d),
            {{1, enc_.x(e, d)}, {-1, enc_.x(e, d - 1)}}, Sense::kGe, 0);
      }
    }
    for (std::size_t a = 0; a < enc_.aux.size(); ++a) {
      const AuxMinterm& aux = enc_.aux[a];
      const auto size = static_cast<std::int64_t>(aux.members.size());
      for (std::size_t d = 1; d <= horizon; ++d) {
        std::vector<LinearTerm> row{{size, enc_.c(a, d)}};
        for (EntityId m : aux.members) row.push_back({-1, enc_.x(m, d - 1)});
        add("aux_" + aux_name(a) + "_" + std::to_string(d), std::move(row),
            Sense::kGe, 0);
      }
    }
    std::size_t next_aux = 0;
    for (const Idr& idr : system_.idrs()) {
      const EntityId e = idr.target;
      const std::string tag = label(e);
      if (idr.minterms.size() == 1) {
        const auto& members = idr.minterms.front().members;
        const auto size = static_cast<std::int64_t>(members.size());
        for (std::size_t d = 1; d <= horizon; ++d) {
          const std::string suffix = tag + "_" + std::to_string(d);
          // N x_id >= sum x_j(d-1) - N q_i
          std::vector<LinearTerm> lb{{size, enc_.x(e, d)}};
          for (EntityId m : members) lb.push_back({-1, enc_.x(m, d - 1)});
          lb.push_back({size, enc_.q(e)});
          add("single_lb_" + suffix, std::move(lb), Sense::kGe, 0);
          // x_id <= sum x_j(d-1) + g_i
          std::vector<LinearTerm> ub{{1, enc_.x(e, d)}};
          for (EntityId m : members) ub.push_back({-1, enc_.x(m, d - 1)});
          ub.push_back({-1, enc_.g(e)});
          add("single_ub_" + suffix, std::move(ub), Sense::kLe, 0);
        }
        continue;
      }
      const auto count = static_cast<std::int64_t>(idr.minterms.size());
      // Per minterm: its aux index, or the single member.
      std::vector<std::pair<bool, std::size_t>> slots;
      for (const Minterm& m : idr.minterms) {
        if (m.members.size() > 1) {
          slots.emplace_back(true, next_aux++);
        } else {
          slots.emplace_back(false, m.members.front().index);
        }
      }
      for (std::size_t d = 1; d <= horizon; ++d) {
        const std::string suffix = tag + "_" + std::to_string(d);
        auto slot_var = [&](const std::pair<bool, std::size_t>& s) {
          return s.first ? enc_.c(s.second, d)
                         : enc_.x(EntityId{static_cast<std::uint32_t>(
                                      s.second)},
                                  d - 1);
        };
        // x_id >= sum terms - (M - 1) - q_i
        std::vector<LinearTerm> lb{{1, enc_.x(e, d)}};
        for (const auto& s : slots) lb.push_back({-1, slot_var(s)});
        lb.push_back({1, enc_.q(e)});
        add("multi_lb_" + suffix, std::move(lb), Sense::kGe, -(count - 1));
        // M x_id <= sum terms + M g_i
        std::vector<LinearTerm> ub{{count, enc_.x(e, d)}};
        for (const auto& s : slots) ub.push_back({-1, slot_var(s)});
        ub.push_back({-count, enc_.g(e)});
        add("multi_ub_" + suffix, std::move(ub), Sense::kLe, 0);
      }
    }
  }

  IlpEncoding& enc() { return enc_; }
  const std::string& label(EntityId e) const { return system_.label(e); }
  const std::string& name_of(std::uint32_t var) const {
    return enc_.vars[var].name;
  }

 private:
  void collect_aux() {
    for (const Idr& idr : system_.idrs()) {
      if (idr.minterms.size() < 2) continue;
      for (std::uint32_t j = 0; j < idr.minterms.size(); ++j) {
        if (idr.minterms[j].members.size() > 1) {
          enc_.aux.push_back({idr.target, j, idr.minterms[j].members});
        }
      }
    }
  }

  std::string aux_name(std::size_t a) const {
    const AuxMinterm& aux = enc_.aux[a];
    return system_.label(aux.target) + "_" + std::to_string(aux.minterm + 1);
  }

  void declare_vars() {
    const std::size_t n = system_.size();
    auto& vars = enc_.vars;
    for (std::uint32_t i = 0; i < n; ++i) {
      vars.push_back({"g_" + system_.label(EntityId{i}), VarKind::kG, i, 0, 0});
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      vars.push_back({"q_" + system_.label(EntityId{i}), VarKind::kQ, i, 0, 0});
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t t = 0; t <= enc_.time_horizon; ++t) {
        vars.push_back({"x_" + system_.label(EntityId{i}) + "_" +
                            std::to_string(t),
                        VarKind::kX, i, 0, t});
      }
    }
    for (std::uint32_t a = 0; a < enc_.aux.size(); ++a) {
      for (std::uint32_t t = 1; t <= enc_.time_horizon; ++t) {
        vars.push_back({"c_" + aux_name(a) + "_" + std::to_string(t),
                        VarKind::kC, enc_.aux[a].target.index, a, t});
      }
    }
  }

  const System& system_;
  IlpEncoding enc_;
};

}  // namespace

IlpEncoding encode_enh_ilp(const EnhInstance& inst) {
  const System& system = *inst.system;
  Builder b(system, inst.initial_failed);
  auto& enc = b.enc();
  const std::size_t n = system.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    enc.objective.push_back({1, enc.x(EntityId{i}, enc.time_horizon)});
  }
  if (n > 0) {
    std::vector<LinearTerm> budget;
    for (std::uint32_t i = 0; i < n; ++i) budget.push_back({1, enc.q(EntityId{i})});
    b.add("budget", std::move(budget), Sense::kLe,
          static_cast<std::int64_t>(inst.budget));
  }
  b.cascade_rows();
  return b.take();
}

IlpEncoding encode_teh_ilp(const TehInstance& inst) {
  const System& system = *inst.system;
  Builder b(system, inst.initial_failed);
  auto& enc = b.enc();
  const std::size_t n = system.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    enc.objective.push_back({1, enc.q(EntityId{i})});
  }
  b.cascade_rows();
  const EntitySet& p = inst.protect;
  for (auto i = p.find_first(); i != EntitySet::npos; i = p.find_next(i)) {
    const EntityId e{static_cast<std::uint32_t>(i)};
    b.add("protect_" + system.label(e), {{1, enc.x(e, enc.time_horizon)}},
          Sense::kEq, 0);
  }
  return b.take();
}

namespace {

constexpr std::size_t kTermsPerLine = 10;

void write_terms(const IlpEncoding& enc, const std::vector<LinearTerm>& terms,
                 std::ostream& out) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k > 0 && k % kTermsPerLine == 0) out << "\n   ";
    const auto& t = terms[k];
    const std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
    if (t.coef < 0) {
      out << " -";
    } else if (k > 0) {
      out << " +";
    }
    out << ' ';
    if (mag != 1) out << mag << ' ';
    out << enc.vars[t.var].name;
  }
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::kLe:
      return "<=";
    case Sense::kGe:
      return ">=";
    case Sense::kEq:
      return "=";
  }
  return "=";
}

}  // namespace

void export_lp(const IlpEncoding& enc, std::ostream& out) {
  out << "\\ entity hardening ILP: " << enc.entity_count << " entities, "
      << enc.vars.size() << " variables, " << enc.constraints.size()
      << " constraints\n";
  out << "Minimize\n obj:";
  write_terms(enc, enc.objective, out);
  out << "\nSubject To\n";
  for (const auto& row : enc.constraints) {
    out << ' ' << row.name << ':';
    write_terms(enc, row.terms, out);
    out << ' ' << sense_text(row.sense) << ' ' << row.rhs << '\n';
  }
  out << "Binary\n";
  for (const auto& v : enc.vars) out << ' ' << v.name << '\n';
  out << "End\n";
  if (!out) throw std::runtime_error("failed writing LP output");
}

std::vector<std::int64_t> trace_assignment(const IlpEncoding& enc,
                                           const CascadeTrace& trace,
                                           const EntitySet& plan) {
  const std::size_t n = enc.entity_count;
  if (trace.steps.empty() || trace.steps.front().size() != n ||
      plan.size() != n || enc.initial_failed.size() != n) {
    throw std::invalid_argument("trace/plan dimensions do not match encoding");
  }
  std::vector<std::int64_t> values(enc.vars.size(), 0);
  for (std::size_t v = 0; v < enc.vars.size(); ++v) {
    const IlpVar& var = enc.vars[v];
    switch (var.kind) {
      case VarKind::kG:
        values[v] = enc.initial_failed.test(var.entity);
        break;
      case VarKind::kQ:
        values[v] = plan.test(var.entity);
        break;
      case VarKind::kX:
        values[v] = trace.at(var.time).test(var.entity);
        break;
      case VarKind::kC: {
        const EntitySet& prev = trace.at(var.time - 1);
        values[v] = std::any_of(
            enc.aux[var.aux].members.begin(), enc.aux[var.aux].members.end(),
            [&](EntityId m) { return prev.test(m.index); });
        break;
      }
    }
  }
  return values;
}

bool satisfies(const LinearConstraint& row,
               const std::vector<std::int64_t>& values) {
  std::int64_t lhs = 0;
  for (const auto& t : row.terms) lhs += t.coef * values.at(t.var);
  switch (row.sense) {
    case Sense::kLe:
      return lhs <= row.rhs;
    case Sense::kGe:
      return lhs >= row.rhs;
    case Sense::kEq:
      return lhs == row.rhs;
  }
  return false;
}

std::int64_t objective_value(const IlpEncoding& enc,
                             const std::vector<std::int64_t>& values) {
  std::int64_t total = 0;
  for (const auto& t : enc.objective) total += t.coef * values.at(t.var);
  return total;
}

std::vector<std::string> violated_rows(const IlpEncoding& enc,
                                       const std::vector<std::int64_t>& values) {
  std::vector<std::string> out;
  for (const auto& row : enc.constraints) {
    if (!satisfies(row, values)) out.push_back(row.name);
  }
  return out;
}

bool check_trace_feasible(const IlpEncoding& enc, const CascadeTrace& trace,
                          const EntitySet& plan) {
  const auto values = trace_assignment(enc, trace, plan);
  return std::all_of(enc.constraints.begin(), enc.constraints.end(),
                     [&](const LinearConstraint& row) {
                       return satisfies(row, values);
                     });
}

}  // namespace iim
