#ifndef IIM_TESTS_FIXTURES_H_
#define IIM_TESTS_FIXTURES_H_

#include <string>
#include <vector>

#include "iim/system.h"

namespace fixtures {

inline constexpr const char* kTable1 =
    "a1 a2 a3 b1 b2 b3 b4\n"
    "a1 <- b2\n"
    "a2 <- b2\n"
    "a3 <- b4\n"
    "b1 <- a1 + a2\n"
    "b2 <- a1 a2\n"
    "b3 <- a2 + a1 a3\n"
    "b4 <- a3\n";

inline iim::System table1() { return iim::parse_system(kTable1); }

inline iim::EntitySet set_of(const iim::System& s,
                             const std::vector<std::string>& labels) {
  return s.make_set(labels);
}

inline std::string data_path(const std::string& name) {
  return std::string(IIM_SOURCE_DIR) + "/data/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(IIM_SOURCE_DIR) + "/tests/golden/" + name;
}

}  // namespace fixtures

#endif  // IIM_TESTS_FIXTURES_H_
