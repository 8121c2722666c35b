#pragma once

// Command dispatch for the nis tool. Exit codes: 0 ok/valid/feasible,
// 1 a computed negative answer (with report), 2 usage or input error.

#include <ostream>
#include <string>
#include <vector>

namespace nis {

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nis
