#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadidem::cli {

/// Runs one CLI invocation; JSON goes to `out`, usage errors to `err`.
/// Exit codes: 0 success, 1 verification failed, 2 unknown, 3 parse or
/// validation error, 4 target not singular, 5 ring refused or invalid d.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace quadidem::cli
