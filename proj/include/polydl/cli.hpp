#pragma once

// Command-line front end. Subcommands: check, eval-gra, reify, sat,
// oracle-sat, unravel, bridge, game.
//
// Exit codes: 0 success (or sat), 1 unsat, 2 usage, parse or validation
// error, 3 budget or cap exceeded.

#include <iosfwd>
#include <string>
#include <vector>

namespace polydl {

/// `args` excludes the program name. A file argument of "-" reads `in`.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err);

}  // namespace polydl
