#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace superdiff {

struct PropertyResult
{
	std::string name;
	unsigned passed = 0;
	unsigned failed = 0;
	std::string first_failure; ///< message of the first failing trial
};

struct SelftestReport
{
	std::uint64_t seed = 0;
	unsigned count = 0;
	std::vector<PropertyResult> properties;

	bool ok() const;
	/// One line per property, then a totals line.
	std::string to_text() const;
};

/// Runs every invariant of the library `count` times on inputs drawn from
/// `seed`. Each property draws from its own stream, so results for one
/// property do not depend on the others.
SelftestReport run_selftest(std::uint64_t seed, unsigned count);

} // namespace superdiff
