#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jsdm::cli {

/// Runs the `jsdm` command line. `args` excludes the program name.
/// Returns 0 on success, 1 on domain errors (one `error: <code>: <message>`
/// line on `err`) and 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jsdm::cli
