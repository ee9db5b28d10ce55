#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace friedrichs::cli {

// Exit codes: 0 success (levinson: pass), 1 numerical rejection or failed
// verdict, 2 configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace friedrichs::cli
