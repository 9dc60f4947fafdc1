#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slpkit::cli {

// Exit codes: 0 ok / agreement, 1 disagreement, 2 usage or input error.
inline constexpr int kOk = 0;
inline constexpr int kDisagree = 1;
inline constexpr int kUsage = 2;

// argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace slpkit::cli
