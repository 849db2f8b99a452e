#include "superdiff/polynomial.hpp"

#include "superdiff/error.hpp"

#include <algorithm>
#include <numeric>

namespace superdiff {

unsigned Exponent::degree() const
{
	return std::accumulate(powers.begin(), powers.end(), 0u);
}

std::strong_ordering Exponent::operator<=>(Exponent const &o) const
{
	// larger exponent vectors first
	return std::lexicographical_compare_three_way(o.powers.begin(), o.powers.end(),
	                                              powers.begin(), powers.end());
}

Polynomial::Polynomial(unsigned m, Terms terms) : m_(m)
{
	for (auto const &[e, c] : terms)
	{
		if (e.powers.size() != m)
			throw DimensionError("exponent vector length does not match variable count");
		add_term(e, c);
	}
}

Polynomial Polynomial::constant(unsigned m, Rational c)
{
	Polynomial p(m);
	p.add_term(Exponent{std::vector<std::uint32_t>(m, 0)}, c);
	return p;
}

Polynomial Polynomial::variable(unsigned m, unsigned i)
{
	if (i == 0 || i > m)
		throw DimensionError("even coordinate x" + std::to_string(i) + " out of range");
	Exponent e{std::vector<std::uint32_t>(m, 0)};
	e.powers[i - 1] = 1;
	Polynomial p(m);
	p.add_term(e, 1);
	return p;
}

int Polynomial::degree() const
{
	int d = -1;
	for (auto const &[e, c] : terms_)
		d = std::max(d, int(e.degree()));
	return d;
}

Rational Polynomial::constant_term() const
{
	auto it = terms_.find(Exponent{std::vector<std::uint32_t>(m_, 0)});
	return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(Exponent const &e, Rational const &c)
{
	if (superdiff::is_zero(c))
		return;
	auto [it, inserted] = terms_.try_emplace(e, c);
	if (!inserted)
	{
		it->second += c;
		if (superdiff::is_zero(it->second))
			terms_.erase(it);
	}
}

Polynomial Polynomial::operator-() const
{
	Polynomial r = *this;
	for (auto &[e, c] : r.terms_)
		c = -c;
	return r;
}

Polynomial &Polynomial::operator+=(Polynomial const &o)
{
	if (m_ != o.m_)
		throw DimensionError("polynomial variable counts differ");
	for (auto const &[e, c] : o.terms_)
		add_term(e, c);
	return *this;
}

Polynomial &Polynomial::operator-=(Polynomial const &o)
{
	if (m_ != o.m_)
		throw DimensionError("polynomial variable counts differ");
	for (auto const &[e, c] : o.terms_)
		add_term(e, -c);
	return *this;
}

Polynomial &Polynomial::operator*=(Rational const &c)
{
	if (superdiff::is_zero(c))
		terms_.clear();
	else
		for (auto &[e, v] : terms_)
			v *= c;
	return *this;
}

Polynomial operator*(Polynomial const &a, Polynomial const &b)
{
	if (a.m_ != b.m_)
		throw DimensionError("polynomial variable counts differ");
	Polynomial r(a.m_);
	Exponent e{std::vector<std::uint32_t>(a.m_, 0)};
	for (auto const &[ea, ca] : a.terms_)
		for (auto const &[eb, cb] : b.terms_)
		{
			for (unsigned i = 0; i < a.m_; ++i)
				e.powers[i] = ea.powers[i] + eb.powers[i];
			r.add_term(e, ca * cb);
		}
	return r;
}

Polynomial Polynomial::derivative(unsigned i) const
{
	if (i == 0 || i > m_)
		throw DimensionError("derivative index out of range");
	Polynomial r(m_);
	for (auto const &[e, c] : terms_)
	{
		auto k = e.powers[i - 1];
		if (k == 0)
			continue;
		Exponent d = e;
		d.powers[i - 1] = k - 1;
		r.add_term(d, c * k);
	}
	return r;
}

Polynomial Polynomial::lifted(unsigned m2) const
{
	if (m2 < m_)
		throw DimensionError("cannot lower the variable count of a polynomial");
	Polynomial r(m2);
	for (auto const &[e, c] : terms_)
	{
		Exponent d = e;
		d.powers.resize(m2, 0);
		r.add_term(d, c);
	}
	return r;
}

} // namespace superdiff
