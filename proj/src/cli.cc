#include "iim/cli.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "iim/bench.h"
#include "iim/cascade.h"
#include "iim/exact.h"
#include "iim/generators.h"
#include "iim/heuristics.h"
#include "iim/ilp.h"
#include "iim/io.h"
#include "iim/restricted.h"

namespace iim {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::string system_path;
  std::string instance_path;
  std::optional<std::string> fail;
  std::optional<std::string> harden;
  std::optional<std::string> protect;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> threshold;
  std::string method = "exact";
  std::uint64_t cap = kDefaultSearchCap;
  std::string json_path;
};

struct Resolved {
  System system;
  EntitySet initial;
  EntitySet hardened;
  std::optional<EntitySet> protect;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> threshold;
};

EntitySet labels_to_set(const System& system,
                        const std::vector<std::string>& labels) {
  EntitySet set = system.empty_set();
  for (const auto& l : labels) {
    if (!system.contains(l)) throw UsageError("unknown entity '" + l + "'");
    set.set(system.id(l).index);
  }
  return set;
}

Resolved resolve(const Inputs& in) {
  Resolved r;
  r.system = read_system_file(in.system_path);
  InstanceSpec spec;
  if (!in.instance_path.empty()) spec = read_instance_file(in.instance_path);
  if (in.fail) spec.initial_failures = split_labels(*in.fail);
  if (in.harden) spec.hardened = split_labels(*in.harden);
  if (in.protect) spec.protect = split_labels(*in.protect);
  if (in.budget) spec.budget = in.budget;
  if (in.threshold) spec.threshold = in.threshold;
  r.initial = labels_to_set(r.system, spec.initial_failures);
  r.hardened = labels_to_set(r.system, spec.hardened);
  if (spec.protect) r.protect = labels_to_set(r.system, *spec.protect);
  r.budget = spec.budget;
  r.threshold = spec.threshold;
  return r;
}

void add_system_options(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--system", in.system_path, "System file (IDR text format)")
      ->required();
  cmd->add_option("--instance", in.instance_path, "Instance JSON file");
  cmd->add_option("--fail", in.fail, "Initially failing entities, a,b,c");
}

void add_solver_options(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--method", in.method, "exact|heuristic|case1|case2")
      ->check(CLI::IsMember({"exact", "heuristic", "case1", "case2"}));
  cmd->add_option("--cap", in.cap, "Exhaustive search cap (subsets)");
  cmd->add_option("--json", in.json_path, "Also write the report as JSON");
}

void emit_report(const Resolved& r, const SolveReport& report,
                 const Inputs& in, std::ostream& out) {
  out << format_report(r.system, report);
  if (!in.json_path.empty()) {
    write_text_file(in.json_path,
                    report_to_json(r.system, report).dump(2) + "\n");
  }
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Interdependent infrastructure cascade and hardening toolkit",
               "iimctl"};
  app.require_subcommand(1);
  Inputs in;
  std::function<int()> action;

  auto* cascade_cmd = app.add_subcommand("cascade", "Print a cascade trace");
  add_system_options(cascade_cmd, in);
  cascade_cmd->add_option("--harden", in.harden, "Hardened entities");
  cascade_cmd->callback([&] {
    action = [&] {
      const Resolved r = resolve(in);
      out << format_trace(r.system, cascade(r.system, r.initial, r.hardened));
      return kExitOk;
    };
  });

  auto* kill_cmd = app.add_subcommand("killset", "Print KillSet(E')");
  add_system_options(kill_cmd, in);
  kill_cmd->callback([&] {
    action = [&] {
      const Resolved r = resolve(in);
      const EntitySet k = kill_set(r.system, r.initial);
      out << "killset: " << format_set(r.system, k) << '\n'
          << "size: " << k.count() << '\n';
      return kExitOk;
    };
  });

  std::string entity;
  auto* prot_cmd = app.add_subcommand("protset", "Print PS(e|E')");
  add_system_options(prot_cmd, in);
  prot_cmd->add_option("--entity", entity, "Candidate entity")->required();
  prot_cmd->callback([&] {
    action = [&] {
      const Resolved r = resolve(in);
      if (!r.system.contains(entity)) {
        throw UsageError("unknown entity '" + entity + "'");
      }
      const EntitySet ps =
          protection_set(r.system, r.system.id(entity), r.initial);
      out << "protection_set: " << format_set(r.system, ps) << '\n'
          << "size: " << ps.count() << '\n';
      return kExitOk;
    };
  });

  auto* enh_cmd = app.add_subcommand("solve-enh", "Entity Hardening");
  add_system_options(enh_cmd, in);
  add_solver_options(enh_cmd, in);
  enh_cmd->add_option("--k", in.budget, "Hardening budget");
  enh_cmd->add_option("--threshold", in.threshold,
                      "Decision version: allowed failures E_F");
  enh_cmd->callback([&] {
    action = [&] {
      const Resolved r = resolve(in);
      if (!r.budget) throw UsageError("solve-enh needs --k or a budget field");
      EnhInstance inst{&r.system, r.initial, *r.budget, r.threshold};
      SolveReport report;
      if (in.method == "exact") report = solve_enh_exact(inst, in.cap);
      if (in.method == "heuristic") report = solve_enh_heuristic(inst);
      if (in.method == "case1") report = solve_enh_case1(inst);
      if (in.method == "case2") report = solve_enh_case2_maxcov(inst);
      emit_report(r, report, in, out);
      return kExitOk;
    };
  });

  auto* teh_cmd = app.add_subcommand("solve-teh", "Targeted Entity Hardening");
  add_system_options(teh_cmd, in);
  add_solver_options(teh_cmd, in);
  teh_cmd->add_option("--protect", in.protect, "Entities to keep operational");
  teh_cmd->callback([&] {
    action = [&] {
      const Resolved r = resolve(in);
      TehInstance inst{&r.system, r.initial,
                       r.protect.value_or(r.system.empty_set())};
      SolveReport report;
      if (in.method == "exact") report = solve_teh_exact(inst, in.cap);
      if (in.method == "heuristic") report = solve_teh_heuristic(inst);
      if (in.method == "case1") report = solve_teh_case1(inst);
      if (in.method == "case2") report = solve_teh_case2_setcover(inst);
      emit_report(r, report, in, out);
      return kExitOk;
    };
  });

  std::string problem = "enh";
  std::string out_path;
  auto* lp_cmd = app.add_subcommand("export-lp", "Write the hardening ILP");
  add_system_options(lp_cmd, in);
  lp_cmd->add_option("--problem", problem, "enh|teh")
      ->check(CLI::IsMember({"enh", "teh"}));
  lp_cmd->add_option("--k", in.budget, "ENH budget");
  lp_cmd->add_option("--protect", in.protect, "TEH protect set");
  lp_cmd->add_option("--out", out_path, "Output file (default stdout)");
  lp_cmd->callback([&] {
    action = [&] {
      const Resolved r = resolve(in);
      IlpEncoding enc;
      if (problem == "enh") {
        if (!r.budget) throw UsageError("export-lp --problem enh needs --k");
        enc = encode_enh_ilp({&r.system, r.initial, *r.budget, std::nullopt});
      } else {
        enc = encode_teh_ilp({&r.system, r.initial,
                              r.protect.value_or(r.system.empty_set())});
      }
      std::ostringstream lp;
      export_lp(enc, lp);
      write_output(out_path, lp.str(), out);
      return kExitOk;
    };
  });

  std::size_t vuln_k = 1;
  auto* vuln_cmd =
      app.add_subcommand("vulnerable", "K most vulnerable entities");
  vuln_cmd->add_option("--system", in.system_path, "System file")->required();
  vuln_cmd->add_option("--K", vuln_k, "Number of entities")->required();
  vuln_cmd->add_option("--cap", in.cap, "Exhaustive search cap (subsets)");
  vuln_cmd->callback([&] {
    action = [&] {
      const System system = read_system_file(in.system_path);
      if (vuln_k > system.size()) throw UsageError("--K exceeds |E|");
      const auto v = k_most_vulnerable(system, vuln_k, in.cap);
      out << "entities: " << format_set(system, v.entities) << '\n'
          << "killed: " << v.killed << '\n';
      if (v.greedy_fallback) out << "note: greedy-fallback\n";
      return kExitOk;
    };
  });

  auto* gen_cmd = app.add_subcommand("gen", "Generate systems");
  gen_cmd->require_subcommand(1);
  std::string gen_input;
  auto* gen_power = gen_cmd->add_subcommand("power", "IDRs from power flow");
  gen_power->add_option("--topology", gen_input, "Topology JSON")->required();
  gen_power->add_option("--out", out_path, "Output system file");
  gen_power->callback([&] {
    action = [&] {
      auto g = gen_power_idrs(power_topology_from_json(read_json_file(gen_input)));
      for (const auto& w : g.warnings) err << "warning: " << w << '\n';
      write_output(out_path, format_system(g.system), out);
      return kExitOk;
    };
  });
  std::optional<double> link_threshold;
  auto* gen_geo = gen_cmd->add_subcommand("geo", "Power-communication IDRs");
  gen_geo->add_option("--assets", gen_input, "Geo asset JSON")->required();
  gen_geo->add_option("--long-link", link_threshold,
                      "Fiber link length that needs power");
  gen_geo->add_option("--out", out_path, "Output system file");
  gen_geo->callback([&] {
    action = [&] {
      const auto j = read_json_file(gen_input);
      GeoParams params = geo_params_from_json(j);
      if (link_threshold) params.long_link_threshold = link_threshold;
      auto g = gen_interdep_idrs(geo_assets_from_json(j), params);
      for (const auto& w : g.warnings) err << "warning: " << w << '\n';
      write_output(out_path, format_system(g.system), out);
      return kExitOk;
    };
  });
  std::string cls_name = "general";
  std::size_t gen_n = 10;
  std::uint64_t gen_seed = 1;
  RandomParams rparams;
  auto* gen_rand = gen_cmd->add_subcommand("random", "Random system");
  gen_rand->add_option("--class", cls_name, "case1|case2|general")
      ->check(CLI::IsMember({"case1", "case2", "general"}));
  gen_rand->add_option("--n", gen_n, "Entity count")->check(CLI::PositiveNumber);
  gen_rand->add_option("--seed", gen_seed, "RNG seed");
  gen_rand->add_option("--source-fraction", rparams.source_fraction,
                       "Share of entities with no IDR");
  gen_rand->add_option("--max-minterms", rparams.max_minterms,
                       "Minterms per IDR, upper bound");
  gen_rand->add_option("--max-size", rparams.max_minterm_size,
                       "Entities per minterm, upper bound");
  gen_rand->add_option("--out", out_path, "Output system file");
  gen_rand->callback([&] {
    action = [&] {
      const System s =
          gen_random(idr_class_from_string(cls_name), gen_n, gen_seed, rparams);
      write_output(out_path, format_system(s), out);
      return kExitOk;
    };
  });

  std::string mode = "enh";
  std::optional<std::size_t> bench_k;
  std::string sweep_text, methods_text = "exact,heuristic", csv_path;
  std::string dataset, lp_dir;
  std::uint64_t rng_seed = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep");
  bench_cmd->add_option("--system", in.system_path, "System file")->required();
  bench_cmd->add_option("--mode", mode, "enh|teh")
      ->check(CLI::IsMember({"enh", "teh"}));
  bench_cmd->add_option("--fail", in.fail, "Explicit initial failures");
  bench_cmd->add_option("--vulnerable", bench_k,
                        "Use the K most vulnerable entities");
  bench_cmd->add_option("--sweep", sweep_text, "Budgets or protect sizes");
  bench_cmd->add_option("--protect", in.protect, "Fixed TEH protect set");
  bench_cmd->add_option("--methods", methods_text,
                        "exact,heuristic,case1,case2,ilp-export");
  bench_cmd->add_option("--seed", rng_seed, "Protect-set sampling seed");
  bench_cmd->add_option("--cap", in.cap, "Exhaustive search cap (subsets)");
  bench_cmd->add_option("--dataset", dataset, "Dataset name");
  bench_cmd->add_option("--csv", csv_path, "CSV report path (default stdout)");
  bench_cmd->add_option("--json", in.json_path, "JSON report path");
  bench_cmd->add_option("--lp-dir", lp_dir, "Directory for ilp-export files");
  bench_cmd->callback([&] {
    action = [&] {
      const System system = read_system_file(in.system_path);
      BenchmarkSpec spec;
      spec.system = &system;
      spec.dataset = dataset.empty()
                         ? std::filesystem::path(in.system_path).stem().string()
                         : dataset;
      spec.mode = mode == "enh" ? BenchMode::kEnh : BenchMode::kTeh;
      if (in.fail) spec.initial_failures = split_labels(*in.fail);
      spec.vulnerable_k = bench_k;
      if (in.protect) spec.protect = split_labels(*in.protect);
      for (const auto& v : split_labels(sweep_text)) {
        try {
          spec.sweep.push_back(std::stoul(v));
        } catch (const std::exception&) {
          throw UsageError("bad sweep value '" + v + "'");
        }
      }
      spec.methods = split_labels(methods_text);
      for (const auto& m : spec.methods) {
        static const std::vector<std::string> known = {
            "exact", "heuristic", "case1", "case2", "ilp-export"};
        if (std::find(known.begin(), known.end(), m) == known.end()) {
          throw UsageError("unknown method '" + m + "'");
        }
      }
      spec.rng_seed = rng_seed;
      spec.search_cap = in.cap;
      if (!lp_dir.empty()) spec.lp_dir = lp_dir;
      const BenchmarkReport report = run_benchmark(spec);
      write_output(csv_path, report_csv(report), out);
      if (!in.json_path.empty()) {
        write_text_file(in.json_path, report_json(report).dump(2) + "\n");
      }
      for (const auto& v : report.violations) err << "bound violated: " << v << '\n';
      return report.violations.empty() ? kExitOk : kExitBoundViolation;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }
  if (!action) {
    err << "error: no command\n";
    return kExitUsage;
  }
  try {
    return action();
  } catch (const SearchSpaceExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace iim
