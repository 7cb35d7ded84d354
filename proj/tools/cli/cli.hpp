#ifndef COMPSPEC_CLI_HPP
#define COMPSPEC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace compspec::cli
{

enum ExitCode { ok = 0, usage_error = 1, math_error = 2 };

// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace compspec::cli

#endif
