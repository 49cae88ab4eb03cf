/**
 * @file cli.hpp
 * @brief Command-line front end: generate, solve, evaluate, compare.
 *
 * Exit codes: 0 success, 2 usage/input errors, 3 a limit stopped the run
 * (the partial run is still written), 4 oracle contract violation.
 * PARETO_LOG (off, error, warn, info, debug, trace) sets the verbosity of
 * diagnostics on the error stream.
 */

#ifndef INNERAPX_CLI_HPP
#define INNERAPX_CLI_HPP

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace innerapx {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPartial = 3;
inline constexpr int kExitContract = 4;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit code for an exception escaping a subcommand.
int exit_code_for(const std::exception& e);

}  // namespace innerapx

#endif  // INNERAPX_CLI_HPP
