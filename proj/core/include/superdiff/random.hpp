#pragma once

#include "superdiff/derivation.hpp"
#include "superdiff/grassmann.hpp"
#include "superdiff/morphism.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace superdiff {

/// Seeded generators for the property suite. Every draw goes through
/// rng() % k so results do not depend on the standard library's
/// distributions.
class RandomSource {
  public:
	explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

	std::uint64_t below(std::uint64_t k) { return k == 0 ? 0 : rng_() % k; }
	bool coin(unsigned percent = 50) { return below(100) < percent; }
	/// a/b with |a| <= 5, 1 <= b <= 3; nonzero unless allow_zero.
	Rational rational(bool allow_zero = true);
	std::int64_t small_int(int bound) { return std::int64_t(below(2 * bound + 1)) - bound; }

	std::mt19937_64 &engine() { return rng_; }

  private:
	std::mt19937_64 rng_;
};

struct RandomShape
{
	int degree = 2;         ///< polynomial degree bound
	unsigned terms = 3;     ///< number of monomials drawn
};

/// Random element with the given parity (nullopt: no constraint). t's are
/// used up to d.p.
Superfunction random_superfunction(RandomSource &r, Dims d, std::optional<unsigned> parity, RandomShape s = {});
/// Random element of the external algebra only.
GrassmannElement random_grassmann(RandomSource &r, unsigned n, std::optional<unsigned> parity, unsigned terms = 3);
/// Random homogeneous field of the given parity.
SuperDerivation random_derivation(RandomSource &r, Dims d, unsigned parity, RandomShape s = {});
/// Random even field of filtration degree >= k on R^{m|n} (no t's).
SuperDerivation random_filtered_field(RandomSource &r, unsigned m, unsigned n, int k, RandomShape s = {});

/// x -> Ax + b, th -> B th with integer entries and nonzero determinant,
/// optionally followed by a unipotent perturbation. Certified.
UnderlyingMorphism random_body(RandomSource &r, unsigned m, unsigned n, bool unipotent = false);
/// Automorphism that is the identity modulo J^2.
UnderlyingMorphism random_unipotent(RandomSource &r, unsigned m, unsigned n, RandomShape s = {});

/// Random factored form over a random body; fields of parity |I| mod 2.
FactoredForm random_factored(RandomSource &r, Dims d, bool unipotent_body = false, RandomShape s = {});
/// A certified Lambda_p-point.
SuperMorphism random_point(RandomSource &r, Dims d, bool unipotent_body = false, RandomShape s = {});

/// Morphism Lambda_s -> Lambda_t with odd images.
GrassmannMorphism random_grassmann_morphism(RandomSource &r, unsigned s, unsigned t);

} // namespace superdiff
