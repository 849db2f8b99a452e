#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superdiff::cli {

enum ExitCode
{
	exit_ok = 0,
	exit_verification = 1,
	exit_parse = 2,
	exit_invertibility_unknown = 3,
	exit_dimension = 4,
	exit_io = 5,
	exit_usage = 6,
	exit_domain = 7,
	exit_malformed = 8,
};

/// Runs one command line (args excludes the program name). Inputs named
/// "-" are read from `in`.
int run(std::vector<std::string> const &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace superdiff::cli
