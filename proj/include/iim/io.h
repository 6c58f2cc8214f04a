#ifndef IIM_IO_H_
#define IIM_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "iim/cascade.h"
#include "iim/problem.h"

namespace iim {

// Instance file (JSON object):
//   initial_failures: [labels]      required
//   budget: integer                 optional (ENH)
//   protect: [labels]               optional (TEH)
//   hardened: [labels]              optional (cascade plan)
//   threshold: integer              optional (ENH decision version)
struct InstanceSpec {
  std::vector<std::string> initial_failures;
  std::optional<std::size_t> budget;
  std::optional<std::vector<std::string>> protect;
  std::vector<std::string> hardened;
  std::optional<std::size_t> threshold;
};

InstanceSpec instance_from_json(const nlohmann::json& j);
InstanceSpec read_instance_file(const std::string& path);
nlohmann::json to_json(const InstanceSpec& spec);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

// "a,b , c" -> {"a","b","c"}; empty input -> {}.
std::vector<std::string> split_labels(std::string_view csv);

// "{a1, a2}" with labels sorted.
std::string format_set(const System& system, const EntitySet& set);

// One row per entity with its 0/1 state at each step, then the fixed point.
std::string format_trace(const System& system, const CascadeTrace& trace);

std::string format_report(const System& system, const SolveReport& report);
nlohmann::json report_to_json(const System& system, const SolveReport& report);

}  // namespace iim

#endif  // IIM_IO_H_
