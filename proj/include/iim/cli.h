#ifndef IIM_CLI_H_
#define IIM_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace iim {

// Exit codes of cli_main.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCapExceeded = 2;
inline constexpr int kExitBoundViolation = 3;

// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace iim

#endif  // IIM_CLI_H_
