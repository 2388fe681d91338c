#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polytree {

/// Command-line front end.  args excludes the program name.  Returns the
/// process exit code: 0 success, 2 parameter/spectrum/regime errors, 3 I/O
/// errors.  All CSV goes to `out` unless --output redirects it to a file;
/// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace polytree
