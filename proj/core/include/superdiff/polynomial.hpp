#pragma once

#include "superdiff/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

namespace superdiff {

/// Exponent vector of a monomial x1^a1 ... xm^am.
struct Exponent
{
	std::vector<std::uint32_t> powers;

	unsigned degree() const;
	bool operator==(Exponent const &) const = default;
	/// Descending lexicographic, so x1^2 sorts before x1 before 1.
	std::strong_ordering operator<=>(Exponent const &o) const;
};

/// Sparse polynomial with rational coefficients in the even coordinates
/// x1..xm.
class Polynomial {
  public:
	using Terms = std::map<Exponent, Rational>;

	Polynomial() = default;
	explicit Polynomial(unsigned m) : m_(m) {}
	Polynomial(unsigned m, Terms terms);

	static Polynomial constant(unsigned m, Rational c);
	/// The coordinate x_i (1-based).
	static Polynomial variable(unsigned m, unsigned i);

	unsigned m() const { return m_; }
	Terms const &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	/// -1 for the zero polynomial.
	int degree() const;
	Rational constant_term() const;

	Polynomial operator-() const;
	Polynomial &operator+=(Polynomial const &o);
	Polynomial &operator-=(Polynomial const &o);
	Polynomial &operator*=(Rational const &c);

	friend Polynomial operator+(Polynomial a, Polynomial const &b) { return a += b; }
	friend Polynomial operator-(Polynomial a, Polynomial const &b) { return a -= b; }
	friend Polynomial operator*(Rational const &c, Polynomial a) { return a *= c; }
	friend Polynomial operator*(Polynomial const &a, Polynomial const &b);

	/// Partial derivative with respect to x_i (1-based).
	Polynomial derivative(unsigned i) const;

	/// The same polynomial viewed in m2 >= m variables.
	Polynomial lifted(unsigned m2) const;

	void add_term(Exponent const &e, Rational const &c);

	bool operator==(Polynomial const &) const = default;

  private:
	unsigned m_ = 0;
	Terms terms_;
};

} // namespace superdiff
