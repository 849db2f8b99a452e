#pragma once

#include "superdiff/substitution.hpp"
#include "superdiff/superfunction.hpp"

#include <optional>
#include <vector>

namespace superdiff {

/// Super vector field sum_i a_i d/dx_i + sum_j b_j d/dth_j on R^{m|n}, with
/// coefficients possibly carrying external generators t.
///
/// The coefficients are written to the left of the partial derivatives, and
/// d/dth_j acts as a left derivative, so a field of rank p is a derivation of
/// the tensor algebra that anticommutes with every odd t.
class SuperDerivation {
  public:
	SuperDerivation() = default;
	explicit SuperDerivation(Dims d);
	SuperDerivation(Dims d, std::vector<Superfunction> even_coeffs, std::vector<Superfunction> odd_coeffs);

	static SuperDerivation partial_x(Dims d, unsigned i);
	static SuperDerivation partial_theta(Dims d, unsigned j);

	Dims dims() const { return dims_; }
	std::vector<Superfunction> const &even_coeffs() const { return even_; }
	std::vector<Superfunction> const &odd_coeffs() const { return odd_; }
	bool is_zero() const;

	/// Coefficient of d/dx_i, equivalently the value on x_i.
	Superfunction const &on_x(unsigned i) const { return even_.at(i - 1); }
	/// Coefficient of d/dth_j, equivalently the value on th_j.
	Superfunction const &on_theta(unsigned j) const { return odd_.at(j - 1); }

	/// 0 or 1 for a homogeneous field (zero counts as even), nullopt if mixed.
	std::optional<unsigned> parity() const;

	SuperDerivation operator-() const;
	SuperDerivation &operator+=(SuperDerivation const &o);
	SuperDerivation &operator-=(SuperDerivation const &o);
	SuperDerivation &operator*=(Rational const &c);
	friend SuperDerivation operator+(SuperDerivation a, SuperDerivation const &b) { return a += b; }
	friend SuperDerivation operator-(SuperDerivation a, SuperDerivation const &b) { return a -= b; }
	friend SuperDerivation operator*(Rational const &c, SuperDerivation a) { return a *= c; }

	/// s * X: every coefficient multiplied on the left by s.
	SuperDerivation left_multiplied(Superfunction const &s) const;

	SuperDerivation lifted(Dims d) const;

	/// X_J with X = sum_J t_J * X_J; result has external rank 0.
	SuperDerivation tau_component(IndexSet tau) const;
	/// t_J * X for X of rank 0, as a field of rank p.
	static SuperDerivation tau_prefixed(IndexSet tau, SuperDerivation const &x, unsigned p);

	bool operator==(SuperDerivation const &) const = default;

  private:
	Dims dims_;
	std::vector<Superfunction> even_;
	std::vector<Superfunction> odd_;
};

/// Builds the field whose value on each coordinate generator is given by
/// `value` applied to that generator.
template <class F> SuperDerivation derivation_from_generators(Dims gen_dims, Dims out_dims, F &&value)
{
	std::vector<Superfunction> ev, od;
	for (unsigned i = 1; i <= gen_dims.m; ++i)
		ev.push_back(value(Superfunction::x(gen_dims, i)).lifted(out_dims));
	for (unsigned j = 1; j <= gen_dims.n; ++j)
		od.push_back(value(Superfunction::theta(gen_dims, j)).lifted(out_dims));
	return SuperDerivation(out_dims, std::move(ev), std::move(od));
}

Superfunction der_apply(SuperDerivation const &x, Superfunction const &f);

/// Super commutator XY - (-1)^{|X||Y|} YX. Throws ParityError on mixed input.
SuperDerivation bracket(SuperDerivation const &x, SuperDerivation const &y);

/// Minimal filtration weight over the nonzero coefficients, with th counted
/// +1 and d/dth counted -1. kInfiniteDegree for the zero field.
int filtration_degree(SuperDerivation const &x);

/// sum_k D^k(f)/k!. The series must terminate within n+p+2 steps;
/// otherwise DomainError.
Superfunction exp_series(SuperDerivation const &d, Superfunction const &f);

/// X transported along an invertible phi0: phi0^{-1} o X o phi0, so that
/// X o phi0 = phi0 o pushforward(phi0, X). Throws InvertibilityError when
/// phi0 carries no certified inverse.
SuperDerivation pushforward(UnderlyingMorphism const &phi0, SuperDerivation const &x);

/// exp of an even field of filtration degree >= 2 on a plain superdomain.
/// The result carries exp(-X) as certified inverse.
UnderlyingMorphism exp_nilpotent(SuperDerivation const &x);

/// Inverse of exp_nilpotent on automorphisms that are the identity modulo
/// the square of the nilpotent ideal.
SuperDerivation log_unipotent(UnderlyingMorphism const &phi);

/// True iff phi(g) - g lies in J^k for every generator g.
bool is_identity_mod_j(UnderlyingMorphism const &phi, unsigned k);

/// An operator f -> t_prefix * X(f).
struct PrefixedOperator
{
	IndexSet prefix;
	SuperDerivation field;
};

/// Applies a single prefixed operator.
Superfunction apply_prefixed(PrefixedOperator const &op, Superfunction const &f);

/// Average over all orderings of the composite a_1 o ... o a_k, applied to f.
/// The empty list acts as the identity.
Superfunction symmetrize_apply(std::vector<PrefixedOperator> const &ops, Superfunction const &f);

} // namespace superdiff
