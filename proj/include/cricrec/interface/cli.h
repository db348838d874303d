#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cricrec {

// Runs one subcommand: ingest, rate, simulate, embed, cluster, replace,
// recommend, evaluate or serve. `args` excludes the program name. Results go
// to `out` unless --out names a file; failures print one error_json() line to
// `err` and return the exit code of their error class.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cricrec
