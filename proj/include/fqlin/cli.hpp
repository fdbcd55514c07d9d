#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fqlin::cli {

// Runs one subcommand. args excludes the program name. The output document
// goes to out (or to the -o file); diagnostics go to err. Returns the exit
// status: 0 success, 2 parse or validation error, 3 precondition violation,
// 4 non-convergence or failed residual check, 5 field extension needed.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& data);

}  // namespace fqlin::cli
