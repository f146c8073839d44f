#pragma once

#include <iosfwd>

namespace knotsurg::cli {

// Exit codes.
inline constexpr int kExitOk = 0;           // success; for obstruct, OBSTRUCTED / conjecture holds
inline constexpr int kExitError = 1;        // internal failure
inline constexpr int kExitUsage = 2;        // bad arguments or input
inline constexpr int kExitBudget = 3;       // a work budget was exceeded
inline constexpr int kExitNotObstructed = 10;  // PASSES, INCONCLUSIVE or NOT-APPLICABLE

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knotsurg::cli
