#pragma once

#include "superdiff/grassmann.hpp"
#include "superdiff/index_set.hpp"
#include "superdiff/polynomial.hpp"

#include <compare>
#include <limits>
#include <map>
#include <optional>

namespace superdiff {

/// Shape of the algebra R[x1..xm] (x) Lambda(th1..thn) (x) Lambda_p.
struct Dims
{
	unsigned m = 0; ///< even coordinates x
	unsigned n = 0; ///< internal odd coordinates th
	unsigned p = 0; ///< external Grassmann generators t

	bool operator==(Dims const &) const = default;
	bool fits_in(Dims const &o) const { return m <= o.m && n <= o.n && p <= o.p; }
	Dims with_p(unsigned q) const { return {m, n, q}; }
};

Dims join(Dims const &a, Dims const &b);

/// Sentinel filtration degree of the zero element.
inline constexpr int kInfiniteDegree = std::numeric_limits<int>::max();

/// Monomial key th_K t_J. The th's always precede the t's.
struct OddKey
{
	IndexSet theta;
	IndexSet tau;

	unsigned parity() const { return (theta.size() + tau.size()) & 1u; }
	bool operator==(OddKey const &) const = default;
	std::strong_ordering operator<=>(OddKey const &) const = default;
};

/// Element f = sum_{K,J} f_{K,J}(x) th_K t_J of the superdomain algebra with
/// polynomial coefficients, optionally tensored with an external Grassmann
/// algebra Lambda_p.
class Superfunction {
  public:
	using Terms = std::map<OddKey, Polynomial>;

	Superfunction() = default;
	explicit Superfunction(Dims d);
	Superfunction(Dims d, Terms terms);

	static Superfunction constant(Dims d, Rational c);
	static Superfunction x(Dims d, unsigned i);
	static Superfunction theta(Dims d, unsigned j);
	/// c * th_K * t_J
	static Superfunction monomial(Dims d, IndexSet theta, IndexSet tau, Rational c = 1);
	static Superfunction from_polynomial(Dims d, Polynomial const &poly);
	/// A pure external element (no x, no th).
	static Superfunction from_grassmann(Dims d, GrassmannElement const &g);

	Dims dims() const { return dims_; }
	Terms const &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	/// Parity of a homogeneous element (zero is even); nullopt if mixed.
	std::optional<unsigned> parity() const;
	bool is_even() const { return parity() == 0u; }
	bool is_odd() const { return parity() == 1u; }

	/// Minimal th-length over the stored terms (external t's excluded).
	int j_degree() const;
	/// Minimal t-length over the stored terms.
	int tau_degree() const;
	/// Largest polynomial degree among the coefficients.
	int poly_degree() const;

	Superfunction operator-() const;
	Superfunction &operator+=(Superfunction const &o);
	Superfunction &operator-=(Superfunction const &o);
	Superfunction &operator*=(Rational const &c);

	friend Superfunction operator+(Superfunction a, Superfunction const &b) { return a += b; }
	friend Superfunction operator-(Superfunction a, Superfunction const &b) { return a -= b; }
	friend Superfunction operator*(Rational const &c, Superfunction a) { return a *= c; }

	Superfunction partial_x(unsigned i) const;
	/// Left derivative: removes th_j from th_K with sign (-1)^{#K below j}.
	Superfunction partial_theta(unsigned j) const;

	/// Embedding into a larger algebra (new generators unused).
	Superfunction lifted(Dims d) const;

	/// f_J with f = sum_J t_J * f_J (t_J written on the left); rank p = 0.
	Superfunction tau_component(IndexSet tau) const;
	/// Set of external subsets J with a nonzero component.
	std::vector<IndexSet> tau_support() const;
	/// t_J * g, for g of external rank 0 and the result in rank p.
	static Superfunction tau_prefixed(IndexSet tau, Superfunction const &g, unsigned p);
	/// Drops every term containing an external generator (the epsilon image),
	/// returning an element of rank 0.
	Superfunction body() const;

	void add_term(OddKey key, Polynomial const &poly);

	bool operator==(Superfunction const &) const = default;

  private:
	Dims dims_;
	Terms terms_;
};

/// Supercommutative product with the Koszul sign.
Superfunction sf_mul(Superfunction const &f, Superfunction const &g);
inline Superfunction operator*(Superfunction const &f, Superfunction const &g) { return sf_mul(f, g); }

Superfunction power(Superfunction const &f, unsigned k);

int j_degree(Superfunction const &f);

/// Drops every term of th-length >= k.
Superfunction reduce_mod_j(Superfunction const &f, unsigned k);

/// Applies a Grassmann-algebra morphism to the external part of f; the result
/// has external rank mor.target_n().
Superfunction push_external(GrassmannMorphism const &mor, Superfunction const &f);

} // namespace superdiff
