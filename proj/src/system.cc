#include "iim/system.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace iim {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  auto head = static_cast<unsigned char>(label.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(label.begin() + 1, label.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

EntityId System::add_entity(std::string_view label) {
  std::string key(label);
  if (auto it = index_.find(key); it != index_.end()) return {it->second};
  if (!is_valid_label(label)) {
    throw InvalidSystem("invalid entity label '" + key + "'");
  }
  auto idx = static_cast<std::uint32_t>(labels_.size());
  labels_.push_back(key);
  index_.emplace(std::move(key), idx);
  idr_pos_.push_back(-1);
  occurrences_.emplace_back();
  return {idx};
}

void System::add_idr(Idr idr) {
  const auto n = size();
  if (idr.target.index >= n) throw InvalidSystem("IDR target out of range");
  const std::string& target = labels_[idr.target.index];
  if (idr_pos_[idr.target.index] >= 0) {
    throw InvalidSystem("duplicate IDR for target '" + target + "'");
  }
  if (idr.minterms.empty()) {
    throw InvalidSystem("IDR for '" + target + "' has no minterms");
  }
  for (const Minterm& m : idr.minterms) {
    if (m.members.empty()) {
      throw InvalidSystem("IDR for '" + target + "' has an empty minterm");
    }
    std::vector<EntityId> sorted = m.members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidSystem("IDR for '" + target +
                          "' repeats an entity inside one minterm");
    }
    for (EntityId e : m.members) {
      if (e.index >= n) throw InvalidSystem("minterm member out of range");
      if (e == idr.target) {
        throw InvalidSystem("target '" + target +
                            "' appears in its own minterm");
      }
    }
  }
  const auto pos = static_cast<std::uint32_t>(idrs_.size());
  idr_pos_[idr.target.index] = static_cast<std::int32_t>(pos);
  minterm_base_.push_back(minterm_total_);
  for (const Minterm& m : idr.minterms) {
    const auto global = static_cast<std::uint32_t>(minterm_total_++);
    for (EntityId e : m.members) occurrences_[e.index].push_back({pos, global});
  }
  idrs_.push_back(std::move(idr));
}

EntityId System::id(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    throw std::out_of_range("unknown entity '" + std::string(label) + "'");
  }
  return {it->second};
}

bool System::contains(std::string_view label) const {
  return index_.count(std::string(label)) != 0;
}

const Idr* System::idr_for(EntityId id) const {
  const auto pos = idr_pos_.at(id.index);
  return pos < 0 ? nullptr : &idrs_[static_cast<std::size_t>(pos)];
}

EntitySet System::make_set(std::span<const std::string> labels) const {
  EntitySet set(size());
  for (const auto& l : labels) set.set(id(l).index);
  return set;
}

std::vector<std::string> System::sorted_labels(const EntitySet& set) const {
  std::vector<std::string> out;
  for (auto i = set.find_first(); i != EntitySet::npos; i = set.find_next(i)) {
    out.push_back(labels_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

EntityId declare(System& system, std::string_view label, int line) {
  if (!is_valid_label(label)) {
    throw ParseError(line, "invalid entity label '" + std::string(label) + "'");
  }
  return system.add_entity(label);
}

}  // namespace

System parse_system(std::string_view text) {
  System system;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto arrow = line.find("<-");
    if (arrow == std::string_view::npos) {
      for (auto label : split_ws(line)) declare(system, label, line_no);
      continue;
    }
    auto lhs = split_ws(line.substr(0, arrow));
    if (lhs.size() != 1) {
      throw ParseError(line_no, "expected exactly one target before '<-'");
    }
    const EntityId target = declare(system, lhs.front(), line_no);
    Idr idr{target, {}};
    std::string_view rhs = line.substr(arrow + 2);
    if (rhs.find("<-") != std::string_view::npos) {
      throw ParseError(line_no, "more than one '<-'");
    }
    std::size_t mstart = 0;
    while (true) {
      std::size_t plus = rhs.find('+', mstart);
      std::string_view chunk = rhs.substr(
          mstart, plus == std::string_view::npos ? std::string_view::npos
                                                 : plus - mstart);
      auto labels = split_ws(chunk);
      if (labels.empty()) throw ParseError(line_no, "empty minterm");
      Minterm m;
      for (auto label : labels) {
        EntityId e = declare(system, label, line_no);
        if (e == target) {
          throw ParseError(line_no, "target '" + std::string(label) +
                                        "' appears in its own minterm");
        }
        m.members.push_back(e);
      }
      idr.minterms.push_back(std::move(m));
      if (plus == std::string_view::npos) break;
      mstart = plus + 1;
    }
    try {
      system.add_idr(std::move(idr));
    } catch (const InvalidSystem& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return system;
}

System read_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string format_idr(const System& system, const Idr& idr) {
  std::string out = system.label(idr.target) + " <-";
  bool first = true;
  for (const Minterm& m : idr.minterms) {
    out += first ? " " : " + ";
    first = false;
    for (std::size_t i = 0; i < m.members.size(); ++i) {
      if (i) out += ' ';
      out += system.label(m.members[i]);
    }
  }
  return out;
}

std::string format_system(const System& system) {
  constexpr std::size_t kPerLine = 16;
  std::string out;
  for (std::size_t i = 0; i < system.size(); ++i) {
    out += system.labels()[i];
    out += (i + 1 == system.size() || (i + 1) % kPerLine == 0) ? '\n' : ' ';
  }
  for (const Idr& idr : system.idrs()) {
    out += format_idr(system, idr);
    out += '\n';
  }
  return out;
}

}  // namespace iim
