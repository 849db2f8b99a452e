#pragma once

#include <gmpxx.h>

#include <string>

namespace superdiff {

/// Exact arbitrary-precision rational. Always kept canonical.
using Rational = mpq_class;

/// "3", "-1/2".
std::string to_string(Rational const &q);

inline bool is_zero(Rational const &q) { return sgn(q) == 0; }

Rational factorial(unsigned k);

} // namespace superdiff
