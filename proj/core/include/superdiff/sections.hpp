#pragma once

#include "superdiff/derivation.hpp"
#include "superdiff/grassmann.hpp"

#include <map>
#include <vector>

namespace superdiff {

/// Even Lambda_p-valued vector field on R^{m|n}: an element of
/// (Lambda_p (x) Der)_0. Throws ParityError otherwise.
class LambdaSection {
  public:
	LambdaSection() = default;
	explicit LambdaSection(SuperDerivation field);

	SuperDerivation const &field() const { return field_; }
	Dims dims() const { return field_.dims(); }

	bool operator==(LambdaSection const &) const = default;

  private:
	SuperDerivation field_;
};

/// Monomial basis of the even sections with coefficient degree <= d, ordered
/// by slot (x1..xm, th1..thn), then x-exponent, then th-set, then t-set.
std::vector<LambdaSection> section_basis(unsigned m, unsigned n, unsigned p, unsigned d);

/// dim Lambda_{p,0} * dim X_0 + dim Lambda_{p,1} * dim X_1 at degree <= d,
/// counted without enumerating.
unsigned long long section_count_formula(unsigned m, unsigned n, unsigned p, unsigned d);

/// Applies mor to the external part of every coefficient.
LambdaSection functor_action(GrassmannMorphism const &mor, LambdaSection const &s);

/// Per image, the components f_I with image = sum_I t_I f_I.
struct SkeletonFamily
{
	unsigned p = 0;
	std::vector<Dims> shapes;
	std::vector<std::map<IndexSet, Superfunction>> components;

	std::vector<Superfunction> reassemble() const;
};

/// Throws DimensionError if an image has external rank other than 0 or p.
SkeletonFamily skeleton_decompose(std::vector<Superfunction> const &images, unsigned p);

} // namespace superdiff
