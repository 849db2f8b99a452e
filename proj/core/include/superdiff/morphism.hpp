#pragma once

#include "superdiff/derivation.hpp"
#include "superdiff/grassmann.hpp"
#include "superdiff/substitution.hpp"
#include "superdiff/superfunction.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace superdiff {

/// phi = exp(sum_I t_I X_I) o phi0, with X_I a field of parity |I| mod 2
/// over the plain superdomain. Zero fields are not stored.
struct FactoredForm
{
	UnderlyingMorphism body;
	std::map<IndexSet, SuperDerivation> fields;
	unsigned p = 0;

	/// sum_I t_I X_I as a single even field of external rank p.
	SuperDerivation exponent() const;
	SuperDerivation field(IndexSet index) const;

	bool operator==(FactoredForm const &) const = default;
};

/// Lambda_p-point of the inner Hom: an algebra homomorphism from the
/// structure algebra of R^{m|n} into its tensor product with Lambda_p,
/// stored by the images of the coordinate generators.
class SuperMorphism {
  public:
	SuperMorphism() = default;
	/// Throws ParityError unless x-images are even and th-images odd
	/// (t's counted), DimensionError on shape mismatch.
	SuperMorphism(Dims d, std::vector<Superfunction> images_x, std::vector<Superfunction> images_th);

	static SuperMorphism identity(Dims d);
	/// The family that does not depend on the external generators.
	static SuperMorphism constant_family(UnderlyingMorphism const &body, unsigned p);

	Dims dims() const { return dims_; }
	std::vector<Superfunction> const &images_x() const { return images_x_; }
	std::vector<Superfunction> const &images_th() const { return images_th_; }

	/// Generator images with every t set to zero. Carries the certified body
	/// inverse when one has been attached.
	UnderlyingMorphism underlying() const;

	/// Attaches a certified inverse of the underlying morphism.
	SuperMorphism with_body_inverse(UnderlyingMorphism const &inv) const;
	bool has_body_inverse() const { return body_inverse_.has_value(); }

	std::optional<FactoredForm> const &cached_factored() const { return factored_; }

	SuperMorphism lifted(Dims d) const;

	/// Images only.
	bool operator==(SuperMorphism const &o) const
	{
		return dims_ == o.dims_ && images_x_ == o.images_x_ && images_th_ == o.images_th_;
	}

  private:
	friend SuperMorphism expand_factored(FactoredForm const &form);

	Dims dims_;
	std::vector<Superfunction> images_x_;
	std::vector<Superfunction> images_th_;
	std::optional<UnderlyingMorphism> body_inverse_;
	std::optional<FactoredForm> factored_;
};

/// Substitutes the generator images into f (f of external rank 0 or p).
Superfunction hom_apply(SuperMorphism const &phi, Superfunction const &f);

/// Components alpha_I(f) with hom_apply(phi, f) = sum_I t_I alpha_I(f).
/// Only nonzero components are returned.
std::map<IndexSet, Superfunction> skeleton(SuperMorphism const &phi, Superfunction const &f);

/// Generator images exp(sum_I t_I X_I)(phi0(g)). Throws ParityError if some
/// X_I has parity other than |I| mod 2, DimensionError on shape mismatch.
SuperMorphism expand_factored(FactoredForm const &form);
SuperMorphism expand_factored(UnderlyingMorphism const &phi0, std::map<IndexSet, SuperDerivation> const &fields,
                              unsigned p);

/// Recovers (phi0, {X_I}) by induction on |I|. The underlying morphism must
/// be certifiable (see certify_inverse); otherwise InvertibilityError.
FactoredForm factorize(SuperMorphism const &phi);

/// Applies a Grassmann morphism to the external part of every image.
SuperMorphism gr_push(GrassmannMorphism const &mor, SuperMorphism const &phi);

enum class Invertibility { invertible, not_invertible, unknown };

struct InvertibilityVerdict
{
	Invertibility status = Invertibility::unknown;
	/// On success: the morphism with its certified inverse attached.
	std::optional<UnderlyingMorphism> certified;
	std::string reason;

	explicit operator bool() const { return status == Invertibility::invertible; }
};

/// Tries to certify an inverse of an underlying morphism: an attached inverse
/// is re-verified; otherwise the morphism is split as (unipotent) o (affine)
/// with the affine factor inverted by exact linear algebra and the unipotent
/// factor by exp/log. Anything else is reported as unknown.
InvertibilityVerdict certify_inverse(UnderlyingMorphism const &body);

} // namespace superdiff
