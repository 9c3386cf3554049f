#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twist/json_io.hpp"

namespace twist::cli {

/// Runs one invocation; args exclude the program name. Returns the exit code:
/// 0 success or verified, 1 counterexample or degenerate, 2 usage or parameter error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Flattens a document into a CSV table. Rows come from the document itself when
/// it is an array, from "witnesses", "values"/"normalized" or "entries" when
/// present, else a single row. Scalar arrays become one space-separated cell.
std::string to_csv(const Json& doc);

}  // namespace twist::cli
