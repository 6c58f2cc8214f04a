#ifndef IIM_SYSTEM_H_
#define IIM_SYSTEM_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace iim {

// Dense index into a System's entity table.
struct EntityId {
  std::uint32_t index = 0;
  friend auto operator<=>(EntityId, EntityId) = default;
};

// Bitset over the dense entity index space. Used for failure states,
// hardening plans and every derived entity set.
using EntitySet = boost::dynamic_bitset<std::uint64_t>;

struct Minterm {
  std::vector<EntityId> members;
};

// Interdependency relation: `target` stays operational while at least one
// minterm has all of its members operational.
struct Idr {
  EntityId target;
  std::vector<Minterm> minterms;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

class InvalidSystem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An I(E, F(E)) system: entity table plus at most one IDR per target.
class System {
 public:
  System() = default;

  // Returns the existing id when the label is already present.
  EntityId add_entity(std::string_view label);
  // Throws InvalidSystem on duplicate target, self dependence, empty
  // minterm lists, empty minterms, duplicate members or unknown ids.
  void add_idr(Idr idr);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::string& label(EntityId id) const { return labels_.at(id.index); }
  const std::vector<std::string>& labels() const { return labels_; }
  EntityId id(std::string_view label) const;  // throws std::out_of_range
  bool contains(std::string_view label) const;

  std::span<const Idr> idrs() const { return idrs_; }
  // nullptr for source entities.
  const Idr* idr_for(EntityId id) const;
  bool has_idr(EntityId id) const { return idr_for(id) != nullptr; }

  // Global minterm numbering: minterm j of idrs()[i] has number
  // minterm_base(i) + j.
  std::size_t minterm_count() const { return minterm_total_; }
  std::size_t minterm_base(std::size_t idr_pos) const {
    return minterm_base_[idr_pos];
  }
  std::size_t idr_position(EntityId target) const {
    return static_cast<std::size_t>(idr_pos_[target.index]);
  }

  struct Occurrence {
    std::uint32_t idr_pos;
    std::uint32_t minterm;  // global minterm number
  };
  // Every minterm the entity is a member of.
  std::span<const Occurrence> occurrences(EntityId id) const {
    return occurrences_[id.index];
  }

  EntitySet empty_set() const { return EntitySet(size()); }
  EntitySet full_set() const { return EntitySet(size()).set(); }
  EntitySet make_set(std::span<const std::string> labels) const;
  // Labels sorted lexicographically.
  std::vector<std::string> sorted_labels(const EntitySet& set) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<Idr> idrs_;
  std::vector<std::int32_t> idr_pos_;
  std::vector<std::size_t> minterm_base_;
  std::size_t minterm_total_ = 0;
  std::vector<std::vector<Occurrence>> occurrences_;
};

bool is_valid_label(std::string_view label);

// Text format, one IDR per line:
//   target <- m1 + m2 + ...      minterm = whitespace separated labels
//   label [label ...]            declares entities (sources unless an IDR
//                                for them appears later)
// '#' starts a comment.
System parse_system(std::string_view text);
System read_system_file(const std::string& path);

// Emits a declaration block listing every entity in index order followed by
// the IDRs in insertion order, so parse(format(s)) reproduces s exactly.
std::string format_system(const System& system);
std::string format_idr(const System& system, const Idr& idr);

}  // namespace iim

#endif  // IIM_SYSTEM_H_
