#ifndef CURATOR_CLI_CLI_H_
#define CURATOR_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace curator::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // io errors, digest conflicts
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSource = 3;
inline constexpr int kExitEmpty = 4;
inline constexpr int kExitInvariant = 5;

// args excludes the program name. Machine output goes to `out`, every
// diagnostic to `err`.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace curator::cli

#endif  // CURATOR_CLI_CLI_H_
