#pragma once

#include "superdiff/superfunction.hpp"

#include <memory>
#include <span>
#include <vector>

namespace superdiff {

/// Substitutes generator images into f: every x_i becomes xs[i-1] and every
/// th_j becomes ths[j-1]; external t's are kept. The images must share one
/// shape whose external rank is 0 or equal to f's.
Superfunction substitute(Superfunction const &f, std::span<Superfunction const> xs,
                         std::span<Superfunction const> ths);

/// Parity-preserving endomorphism of the plain structure algebra of R^{m|n}
/// (no external generators), stored by generator images, with an optional
/// certified inverse.
class UnderlyingMorphism {
  public:
	UnderlyingMorphism() = default;
	/// Throws ParityError unless x-images are even and th-images odd.
	UnderlyingMorphism(unsigned m, unsigned n, std::vector<Superfunction> images_x,
	                   std::vector<Superfunction> images_th);

	static UnderlyingMorphism identity(unsigned m, unsigned n);

	unsigned m() const { return m_; }
	unsigned n() const { return n_; }
	Dims dims() const { return {m_, n_, 0}; }
	std::vector<Superfunction> const &images_x() const { return images_x_; }
	std::vector<Superfunction> const &images_th() const { return images_th_; }

	/// Applies the substitution; f may carry external generators, which pass
	/// through unchanged.
	Superfunction operator()(Superfunction const &f) const;

	bool is_identity() const;

	bool has_inverse() const { return inverse_ != nullptr; }
	/// Throws InvertibilityError if no certified inverse is attached.
	UnderlyingMorphism const &inverse() const;
	/// Returns a copy carrying inv as certified inverse after verifying that
	/// both composites fix every generator. Throws InvertibilityError otherwise.
	UnderlyingMorphism with_inverse(UnderlyingMorphism const &inv) const;
	/// The inverse, itself certified by this morphism.
	UnderlyingMorphism inverted() const;
	UnderlyingMorphism without_inverse() const;

	/// Same images in a larger (m|n); new generators are fixed.
	UnderlyingMorphism lifted(unsigned m, unsigned n) const;

	/// Images only; the certificate does not take part.
	bool operator==(UnderlyingMorphism const &o) const
	{
		return m_ == o.m_ && n_ == o.n_ && images_x_ == o.images_x_ && images_th_ == o.images_th_;
	}

  private:
	unsigned m_ = 0;
	unsigned n_ = 0;
	std::vector<Superfunction> images_x_;
	std::vector<Superfunction> images_th_;
	std::shared_ptr<UnderlyingMorphism const> inverse_;
};

/// outer after inner, as algebra maps: (outer o inner)(f) = outer(inner(f)).
/// Carries a certified inverse when both factors do.
UnderlyingMorphism compose(UnderlyingMorphism const &outer, UnderlyingMorphism const &inner);

} // namespace superdiff
