#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "holonomy/errors.hpp"

namespace holo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitContract = 3;
inline constexpr int kExitBudget = 4;

int exitCodeFor(ErrorCode code);

// args excludes the program name.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace holo
