#ifndef REGSYN_CLI_H
#define REGSYN_CLI_H

#include <iosfwd>
#include <string>

#include "regsyn/verdict.h"

namespace regsyn::cli {

/** Process exit codes; scripts rely on these staying fixed. */
enum ExitCode : int
{
  kSolvable = 0,
  kUnsolvable = 1,
  kUnknown = 2,
  kUsageOrParse = 3,
  kResource = 4,
};

/** `result=<outcome> witness=<term|-> engine=<name>` */
std::string result_line(const Verdict& v);

int exit_code(Outcome o);

/**
 * Entry point behind the `regsyn` executable: subcommands solve, check,
 * gen and enum. Results go to `out`, diagnostics to `err`.
 */
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace regsyn::cli

#endif
