#include "superdiff/superfunction.hpp"

#include "superdiff/error.hpp"

#include <algorithm>

namespace superdiff {

Dims join(Dims const &a, Dims const &b)
{
	return {std::max(a.m, b.m), std::max(a.n, b.n), std::max(a.p, b.p)};
}

namespace {

void check_dims(Dims d)
{
	if (d.n > kMaxOddGenerators || d.p > kMaxOddGenerators)
		throw DimensionError("odd dimension exceeds " + std::to_string(kMaxOddGenerators));
}

void require_same(Dims a, Dims b, char const *what)
{
	if (!(a == b))
		throw DimensionError(std::string(what) + ": dimensions differ (" + std::to_string(a.m) + "|" +
		                     std::to_string(a.n) + "|" + std::to_string(a.p) + " vs " +
		                     std::to_string(b.m) + "|" + std::to_string(b.n) + "|" +
		                     std::to_string(b.p) + ")");
}

bool sign_of_prefix(IndexSet tau, IndexSet theta) { return (tau.size() * theta.size()) & 1u; }

} // namespace

Superfunction::Superfunction(Dims d) : dims_(d) { check_dims(d); }

Superfunction::Superfunction(Dims d, Terms terms) : dims_(d)
{
	check_dims(d);
	for (auto const &[k, poly] : terms)
		add_term(k, poly);
}

void Superfunction::add_term(OddKey key, Polynomial const &poly)
{
	if (poly.is_zero())
		return;
	if (poly.m() != dims_.m)
		throw DimensionError("coefficient polynomial has wrong variable count");
	if (key.theta.max_index() > dims_.n || key.tau.max_index() > dims_.p)
		throw DimensionError("odd index outside the algebra");
	auto [it, inserted] = terms_.try_emplace(key, poly);
	if (!inserted)
	{
		it->second += poly;
		if (it->second.is_zero())
			terms_.erase(it);
	}
}

Superfunction Superfunction::constant(Dims d, Rational c)
{
	Superfunction f(d);
	f.add_term({}, Polynomial::constant(d.m, std::move(c)));
	return f;
}

Superfunction Superfunction::x(Dims d, unsigned i)
{
	Superfunction f(d);
	f.add_term({}, Polynomial::variable(d.m, i));
	return f;
}

Superfunction Superfunction::theta(Dims d, unsigned j)
{
	if (j == 0 || j > d.n)
		throw DimensionError("odd coordinate th" + std::to_string(j) + " out of range");
	return monomial(d, IndexSet::single(j), IndexSet{});
}

Superfunction Superfunction::monomial(Dims d, IndexSet theta, IndexSet tau, Rational c)
{
	Superfunction f(d);
	f.add_term({theta, tau}, Polynomial::constant(d.m, std::move(c)));
	return f;
}

Superfunction Superfunction::from_polynomial(Dims d, Polynomial const &poly)
{
	Superfunction f(d);
	f.add_term({}, poly);
	return f;
}

Superfunction Superfunction::from_grassmann(Dims d, GrassmannElement const &g)
{
	if (g.n() != d.p)
		throw DimensionError("Grassmann element rank does not match external rank");
	Superfunction f(d);
	for (auto const &[s, c] : g.terms())
		f.add_term({IndexSet{}, s}, Polynomial::constant(d.m, c));
	return f;
}

std::optional<unsigned> Superfunction::parity() const
{
	std::optional<unsigned> p;
	for (auto const &[k, poly] : terms_)
	{
		if (p && *p != k.parity())
			return std::nullopt;
		p = k.parity();
	}
	return p.value_or(0);
}

int Superfunction::j_degree() const
{
	int d = kInfiniteDegree;
	for (auto const &[k, poly] : terms_)
		d = std::min(d, int(k.theta.size()));
	return d;
}

int Superfunction::tau_degree() const
{
	int d = kInfiniteDegree;
	for (auto const &[k, poly] : terms_)
		d = std::min(d, int(k.tau.size()));
	return d;
}

int Superfunction::poly_degree() const
{
	int d = -1;
	for (auto const &[k, poly] : terms_)
		d = std::max(d, poly.degree());
	return d;
}

Superfunction Superfunction::operator-() const
{
	Superfunction r(dims_);
	for (auto const &[k, poly] : terms_)
		r.terms_.emplace(k, -poly);
	return r;
}

Superfunction &Superfunction::operator+=(Superfunction const &o)
{
	require_same(dims_, o.dims_, "addition");
	for (auto const &[k, poly] : o.terms_)
		add_term(k, poly);
	return *this;
}

Superfunction &Superfunction::operator-=(Superfunction const &o)
{
	require_same(dims_, o.dims_, "subtraction");
	for (auto const &[k, poly] : o.terms_)
		add_term(k, -poly);
	return *this;
}

Superfunction &Superfunction::operator*=(Rational const &c)
{
	if (superdiff::is_zero(c))
		terms_.clear();
	else
		for (auto &[k, poly] : terms_)
			poly *= c;
	return *this;
}

Superfunction Superfunction::partial_x(unsigned i) const
{
	if (i == 0 || i > dims_.m)
		throw DimensionError("d/dx" + std::to_string(i) + " out of range");
	Superfunction r(dims_);
	for (auto const &[k, poly] : terms_)
		r.add_term(k, poly.derivative(i));
	return r;
}

Superfunction Superfunction::partial_theta(unsigned j) const
{
	if (j == 0 || j > dims_.n)
		throw DimensionError("d/dth" + std::to_string(j) + " out of range");
	Superfunction r(dims_);
	for (auto const &[k, poly] : terms_)
	{
		if (!k.theta.contains(j))
			continue;
		OddKey key{k.theta.without(j), k.tau};
		if (k.theta.count_below(j) & 1u)
			r.add_term(key, -poly);
		else
			r.add_term(key, poly);
	}
	return r;
}

Superfunction Superfunction::lifted(Dims d) const
{
	if (dims_ == d)
		return *this;
	if (!dims_.fits_in(d))
		throw DimensionError("cannot embed into a smaller algebra");
	Superfunction r(d);
	for (auto const &[k, poly] : terms_)
		r.terms_.emplace(k, poly.lifted(d.m));
	return r;
}

Superfunction Superfunction::tau_component(IndexSet tau) const
{
	Superfunction r(dims_.with_p(0));
	for (auto const &[k, poly] : terms_)
	{
		if (k.tau != tau)
			continue;
		r.terms_.emplace(OddKey{k.theta, IndexSet{}}, sign_of_prefix(tau, k.theta) ? -poly : poly);
	}
	return r;
}

std::vector<IndexSet> Superfunction::tau_support() const
{
	std::vector<IndexSet> out;
	for (auto const &[k, poly] : terms_)
		out.push_back(k.tau);
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

Superfunction Superfunction::tau_prefixed(IndexSet tau, Superfunction const &g, unsigned p)
{
	if (g.dims_.p != 0)
		throw DimensionError("tau_prefixed expects an element without external generators");
	if (tau.max_index() > p)
		throw DimensionError("external index outside rank");
	Superfunction r(g.dims_.with_p(p));
	for (auto const &[k, poly] : g.terms_)
		r.terms_.emplace(OddKey{k.theta, tau}, sign_of_prefix(tau, k.theta) ? -poly : poly);
	return r;
}

Superfunction Superfunction::body() const { return tau_component(IndexSet{}); }

Superfunction sf_mul(Superfunction const &f, Superfunction const &g)
{
	require_same(f.dims(), g.dims(), "product");
	Superfunction r(f.dims());
	for (auto const &[k1, p1] : f.terms())
		for (auto const &[k2, p2] : g.terms())
		{
			if (k1.theta.intersects(k2.theta) || k1.tau.intersects(k2.tau))
				continue;
			int sign = merge_sign(k1.theta, k2.theta) * merge_sign(k1.tau, k2.tau);
			if ((k1.tau.size() * k2.theta.size()) & 1u)
				sign = -sign;
			Polynomial prod = p1 * p2;
			if (sign < 0)
				prod = -prod;
			r.add_term({k1.theta | k2.theta, k1.tau | k2.tau}, prod);
		}
	return r;
}

Superfunction power(Superfunction const &f, unsigned k)
{
	Superfunction r = Superfunction::constant(f.dims(), 1);
	for (unsigned i = 0; i < k; ++i)
		r = sf_mul(r, f);
	return r;
}

int j_degree(Superfunction const &f) { return f.j_degree(); }

Superfunction reduce_mod_j(Superfunction const &f, unsigned k)
{
	Superfunction r(f.dims());
	for (auto const &[key, poly] : f.terms())
		if (key.theta.size() < k)
			r.add_term(key, poly);
	return r;
}

Superfunction push_external(GrassmannMorphism const &mor, Superfunction const &f)
{
	if (f.dims().p != mor.source_n())
		throw DimensionError("external rank does not match Grassmann morphism source");
	Dims target = f.dims().with_p(mor.target_n());
	Superfunction r(target);
	for (auto const &[k, poly] : f.terms())
	{
		GrassmannElement img = mor.image_of(k.tau);
		if (img.is_zero())
			continue;
		Superfunction head(target);
		head.add_term({k.theta, IndexSet{}}, poly);
		r += sf_mul(head, Superfunction::from_grassmann(target, img));
	}
	return r;
}

} // namespace superdiff
