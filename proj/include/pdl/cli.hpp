// Command-line front end.
//
//   pdlgc sat FILE                      formula satisfiability
//   pdlgc absat ABOX [TBOX]             ABox consistency
//   pdlgc instance ABOX [TBOX] --var a --formula F
//   pdlgc oracle FILE [TBOX] --max-states k
//
// Exit status: 10 SAT / ENTAILED / SAT(≤k), 20 UNSAT / NOT ENTAILED,
// 0 NO-MODEL(≤k), 1 error, 2 resource limit.

#ifndef PDL_CLI_HPP
#define PDL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pdl {

inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;
inline constexpr int kExitNoModel = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitResource = 2;

// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdl

#endif  // PDL_CLI_HPP
