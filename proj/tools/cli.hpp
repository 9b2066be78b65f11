#pragma once

#include <ostream>

namespace alcove::cli {

// Exit codes: 0 success or passing experiment, 1 failed acceptance or runtime error,
// 2 flag or precondition error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace alcove::cli
