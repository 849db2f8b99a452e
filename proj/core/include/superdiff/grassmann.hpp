#pragma once

#include "superdiff/index_set.hpp"
#include "superdiff/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace superdiff {

/// Element of the Grassmann algebra on n anticommuting generators t[1..n],
/// as a sparse map from index subsets to rational coefficients.
class GrassmannElement {
  public:
	using Terms = std::map<IndexSet, Rational>;

	GrassmannElement() = default;
	explicit GrassmannElement(unsigned n);
	GrassmannElement(unsigned n, Terms terms);

	static GrassmannElement generator(unsigned n, unsigned i);
	static GrassmannElement monomial(unsigned n, IndexSet s, Rational c = 1);

	unsigned n() const { return n_; }
	Terms const &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	Rational coefficient(IndexSet s) const;

	/// 0 or 1 when every term has the same length parity; nullopt otherwise.
	/// The zero element counts as even.
	std::optional<unsigned> parity() const;

	GrassmannElement operator-() const;
	GrassmannElement &operator+=(GrassmannElement const &o);
	GrassmannElement &operator-=(GrassmannElement const &o);
	GrassmannElement &operator*=(Rational const &c);

	friend GrassmannElement operator+(GrassmannElement a, GrassmannElement const &b) { return a += b; }
	friend GrassmannElement operator-(GrassmannElement a, GrassmannElement const &b) { return a -= b; }
	friend GrassmannElement operator*(Rational const &c, GrassmannElement a) { return a *= c; }

	bool operator==(GrassmannElement const &) const = default;

  private:
	void add_term(IndexSet s, Rational const &c);

	unsigned n_ = 0;
	Terms terms_;
};

/// Product in the Grassmann algebra; throws DimensionError if ranks differ.
GrassmannElement gr_mul(GrassmannElement const &a, GrassmannElement const &b);
inline GrassmannElement operator*(GrassmannElement const &a, GrassmannElement const &b) { return gr_mul(a, b); }

/// Body (coefficient of the empty set).
Rational eps(GrassmannElement const &a);

/// The scalar r as an element of the rank-n algebra.
GrassmannElement unit_embed(Rational const &r, unsigned n);

GrassmannElement power(GrassmannElement const &a, unsigned k);

/// Parity-preserving algebra morphism between Grassmann algebras, given by
/// the (odd) images of the source generators.
class GrassmannMorphism {
  public:
	GrassmannMorphism() = default;
	/// Throws ParityError unless every image is odd, DimensionError unless
	/// every image has rank target_n.
	GrassmannMorphism(unsigned source_n, unsigned target_n, std::vector<GrassmannElement> images);

	static GrassmannMorphism identity(unsigned n);
	/// c: the unique morphism from the scalars into the rank-n algebra.
	static GrassmannMorphism initial(unsigned n);
	/// epsilon: kills every generator of the rank-n algebra.
	static GrassmannMorphism terminal(unsigned n);

	unsigned source_n() const { return source_n_; }
	unsigned target_n() const { return target_n_; }
	std::vector<GrassmannElement> const &images() const { return images_; }

	/// Image of the monomial t_S (product of images in increasing order).
	GrassmannElement image_of(IndexSet s) const;

	bool operator==(GrassmannMorphism const &) const = default;

  private:
	unsigned source_n_ = 0;
	unsigned target_n_ = 0;
	std::vector<GrassmannElement> images_;
};

GrassmannElement gr_apply(GrassmannMorphism const &m, GrassmannElement const &a);

/// m2 after m1.
GrassmannMorphism gr_compose(GrassmannMorphism const &m2, GrassmannMorphism const &m1);

} // namespace superdiff
