#include "iim/io.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iim {

InstanceSpec instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance must be an object");
  InstanceSpec spec;
  spec.initial_failures =
      j.at("initial_failures").get<std::vector<std::string>>();
  if (j.contains("budget")) spec.budget = j.at("budget").get<std::size_t>();
  if (j.contains("protect")) {
    spec.protect = j.at("protect").get<std::vector<std::string>>();
  }
  if (j.contains("hardened")) {
    spec.hardened = j.at("hardened").get<std::vector<std::string>>();
  }
  if (j.contains("threshold")) {
    spec.threshold = j.at("threshold").get<std::size_t>();
  }
  return spec;
}

InstanceSpec read_instance_file(const std::string& path) {
  return instance_from_json(read_json_file(path));
}

nlohmann::json to_json(const InstanceSpec& spec) {
  nlohmann::json j;
  j["initial_failures"] = spec.initial_failures;
  if (spec.budget) j["budget"] = *spec.budget;
  if (spec.protect) j["protect"] = *spec.protect;
  if (!spec.hardened.empty()) j["hardened"] = spec.hardened;
  if (spec.threshold) j["threshold"] = *spec.threshold;
  return j;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

std::vector<std::string> split_labels(std::string_view csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string_view piece = csv.substr(start, comma - start);
    const auto b = piece.find_first_not_of(" \t");
    if (b != std::string_view::npos) {
      const auto e = piece.find_last_not_of(" \t");
      out.emplace_back(piece.substr(b, e - b + 1));
    }
    start = comma + 1;
  }
  return out;
}

std::string format_set(const System& system, const EntitySet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& l : system.sorted_labels(set)) {
    if (!first) out += ", ";
    first = false;
    out += l;
  }
  return out + "}";
}

std::string format_trace(const System& system, const CascadeTrace& trace) {
  std::size_t width = 6;  // "entity"
  for (const auto& l : system.labels()) width = std::max(width, l.size());
  std::ostringstream out;
  out << "entity" << std::string(width - 6, ' ');
  for (std::size_t t = 0; t < trace.steps.size(); ++t) out << " t" << t;
  out << '\n';
  for (std::uint32_t i = 0; i < system.size(); ++i) {
    const auto& label = system.label(EntityId{i});
    out << label << std::string(width - label.size(), ' ');
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
      const std::string col = "t" + std::to_string(t);
      out << std::string(col.size(), ' ') << (trace.steps[t].test(i) ? '1' : '0');
    }
    out << '\n';
  }
  out << "fixed_point_time: " << trace.fixed_point_time() << '\n';
  out << "failed: " << trace.final_failed().count() << " of " << system.size()
      << '\n';
  return out.str();
}

std::string format_report(const System& system, const SolveReport& report) {
  std::ostringstream out;
  out << "method: " << report.method << '\n';
  out << "hardened: " << format_set(system, report.plan) << '\n';
  out << "hardened_count: " << report.plan.count() << '\n';
  out << "baseline_failed: " << report.baseline_failed << '\n';
  out << "failed_with_plan: " << report.failed_with_plan << '\n';
  out << "protected: " << report.protected_count << '\n';
  if (report.meets_threshold) {
    out << "meets_threshold: " << (*report.meets_threshold ? "yes" : "no")
        << '\n';
  }
  for (const auto& n : report.notes) out << "note: " << n << '\n';
  return out.str();
}

nlohmann::json report_to_json(const System& system, const SolveReport& report) {
  nlohmann::json j;
  j["method"] = report.method;
  j["hardened"] = system.sorted_labels(report.plan);
  j["baseline_failed"] = report.baseline_failed;
  j["failed_with_plan"] = report.failed_with_plan;
  j["protected"] = report.protected_count;
  j["wall_time"] = report.wall_time;
  j["notes"] = report.notes;
  if (report.meets_threshold) j["meets_threshold"] = *report.meets_threshold;
  return j;
}

}  // namespace iim
