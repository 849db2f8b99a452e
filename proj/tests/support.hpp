#pragma once

#include "superdiff/random.hpp"
#include "superdiff/text.hpp"

namespace superdiff::testing {

inline Superfunction sf(std::string const &s, Dims d) { return parse_superfunction(s, d); }
inline SuperDerivation field(std::string const &s, Dims d) { return parse_derivation(s, d); }
inline GrassmannElement gr(std::string const &s, unsigned n) { return parse_grassmann(s, n); }

inline int koszul(unsigned a, unsigned b) { return (a & b & 1u) ? -1 : 1; }

} // namespace superdiff::testing
