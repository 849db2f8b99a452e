#include "superdiff/random.hpp"

#include "superdiff/polynomial.hpp"

namespace superdiff {

Rational RandomSource::rational(bool allow_zero)
{
	while (true)
	{
		Rational q(small_int(5), std::int64_t(below(3)) + 1);
		q.canonicalize();
		if (allow_zero || q != 0)
			return q;
	}
}

namespace {

Exponent random_exponent(RandomSource &r, unsigned m, int degree)
{
	Exponent e{std::vector<std::uint32_t>(m, 0)};
	if (m == 0 || degree <= 0)
		return e;
	unsigned total = unsigned(r.below(unsigned(degree) + 1));
	for (unsigned k = 0; k < total; ++k)
		++e.powers[r.below(m)];
	return e;
}

IndexSet random_subset(RandomSource &r, unsigned n)
{
	return IndexSet(std::uint32_t(r.below(std::uint64_t(1) << n)));
}

/// Subset of {1..n} of size >= k with the given parity of |K| + extra.
std::optional<IndexSet> random_subset_parity(RandomSource &r, unsigned n, unsigned parity, unsigned at_least = 0)
{
	for (int attempt = 0; attempt < 64; ++attempt)
	{
		IndexSet s = random_subset(r, n);
		if (s.size() % 2 == parity && s.size() >= at_least)
			return s;
	}
	return std::nullopt;
}

} // namespace

Superfunction random_superfunction(RandomSource &r, Dims d, std::optional<unsigned> parity, RandomShape s)
{
	Superfunction f(d);
	for (unsigned k = 0; k < s.terms; ++k)
	{
		IndexSet theta = random_subset(r, d.n);
		IndexSet tau = random_subset(r, d.p);
		if (parity && (theta.size() + tau.size()) % 2 != *parity)
		{
			// flip one generator to fix the parity when possible
			if (d.n > 0)
			{
				unsigned j = unsigned(r.below(d.n)) + 1;
				theta = theta.contains(j) ? theta.without(j) : theta.with(j);
			}
			else if (d.p > 0)
			{
				unsigned j = unsigned(r.below(d.p)) + 1;
				tau = tau.contains(j) ? tau.without(j) : tau.with(j);
			}
			else
				continue;
		}
		Polynomial poly(d.m);
		poly.add_term(random_exponent(r, d.m, s.degree), r.rational(false));
		f += Superfunction::from_polynomial(d, poly) * Superfunction::monomial(d, theta, tau);
	}
	return f;
}

GrassmannElement random_grassmann(RandomSource &r, unsigned n, std::optional<unsigned> parity, unsigned terms)
{
	GrassmannElement g(n);
	for (unsigned k = 0; k < terms; ++k)
	{
		IndexSet s = random_subset(r, n);
		if (parity && s.size() % 2 != *parity)
		{
			if (n == 0)
				continue;
			unsigned j = unsigned(r.below(n)) + 1;
			s = s.contains(j) ? s.without(j) : s.with(j);
		}
		g += GrassmannElement::monomial(n, s, r.rational(false));
	}
	return g;
}

SuperDerivation random_derivation(RandomSource &r, Dims d, unsigned parity, RandomShape s)
{
	RandomShape one = s;
	one.terms = 1;
	std::vector<Superfunction> ev, od;
	for (unsigned i = 0; i < d.m; ++i)
		ev.push_back(r.coin(60) ? random_superfunction(r, d, parity, one) : Superfunction(d));
	for (unsigned j = 0; j < d.n; ++j)
		od.push_back(r.coin(60) ? random_superfunction(r, d, parity ^ 1u, one) : Superfunction(d));
	return SuperDerivation(d, std::move(ev), std::move(od));
}

SuperDerivation random_filtered_field(RandomSource &r, unsigned m, unsigned n, int k, RandomShape s)
{
	Dims d{m, n, 0};
	std::vector<Superfunction> ev(m, Superfunction(d)), od(n, Superfunction(d));
	for (unsigned t = 0; t < s.terms; ++t)
	{
		bool odd_slot = n > 0 && (m == 0 || r.coin());
		// d/dx: even coefficient of th-degree >= k; d/dth: odd of th-degree >= k+1
		unsigned need = unsigned(std::max(0, odd_slot ? k + 1 : k));
		auto theta = random_subset_parity(r, n, odd_slot ? 1u : 0u, need);
		if (!theta)
			continue;
		Polynomial poly(m);
		poly.add_term(random_exponent(r, m, s.degree), r.rational(false));
		Superfunction c = Superfunction::from_polynomial(d, poly) * Superfunction::monomial(d, *theta, IndexSet{});
		if (odd_slot)
			od[r.below(n)] += c;
		else
			ev[r.below(m)] += c;
	}
	return SuperDerivation(d, std::move(ev), std::move(od));
}

namespace {

/// Integer matrix with determinant +-1 (product of elementary matrices and
/// a permutation), so the inverse stays integral.
std::vector<std::vector<std::int64_t>> unimodular(RandomSource &r, unsigned n)
{
	std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
	for (unsigned i = 0; i < n; ++i)
		a[i][i] = r.coin() ? 1 : -1;
	for (unsigned step = 0; n > 1 && step < 2 * n; ++step)
	{
		unsigned i = unsigned(r.below(n)), j = unsigned(r.below(n - 1));
		if (j >= i)
			++j;
		std::int64_t c = r.small_int(2);
		for (unsigned k = 0; k < n; ++k)
			a[i][k] += c * a[j][k];
	}
	return a;
}

} // namespace

UnderlyingMorphism random_body(RandomSource &r, unsigned m, unsigned n, bool unipotent)
{
	Dims d{m, n, 0};
	auto a = unimodular(r, m);
	auto b = unimodular(r, n);
	std::vector<Superfunction> xs, ths;
	for (unsigned i = 0; i < m; ++i)
	{
		Superfunction img = Superfunction::constant(d, Rational(r.small_int(2)));
		for (unsigned j = 0; j < m; ++j)
			img += Rational(a[i][j]) * Superfunction::x(d, j + 1);
		xs.push_back(std::move(img));
	}
	for (unsigned j = 0; j < n; ++j)
	{
		Superfunction img(d);
		for (unsigned k = 0; k < n; ++k)
			img += Rational(b[j][k]) * Superfunction::theta(d, k + 1);
		ths.push_back(std::move(img));
	}
	UnderlyingMorphism body(m, n, std::move(xs), std::move(ths));
	if (unipotent)
		body = compose(random_unipotent(r, m, n, RandomShape{1, 2}), body);
	auto v = certify_inverse(body);
	return *v.certified;
}

UnderlyingMorphism random_unipotent(RandomSource &r, unsigned m, unsigned n, RandomShape s)
{
	Dims d{m, n, 0};
	std::vector<Superfunction> xs, ths;
	for (unsigned i = 1; i <= m; ++i)
	{
		Superfunction img = Superfunction::x(d, i);
		for (unsigned t = 0; t < s.terms; ++t)
			if (auto theta = random_subset_parity(r, n, 0, 2))
			{
				Polynomial poly(m);
				poly.add_term(random_exponent(r, m, s.degree), r.rational(false));
				img += Superfunction::from_polynomial(d, poly) * Superfunction::monomial(d, *theta, IndexSet{});
			}
		xs.push_back(std::move(img));
	}
	for (unsigned j = 1; j <= n; ++j)
	{
		Superfunction img = Superfunction::theta(d, j);
		for (unsigned t = 0; t < s.terms; ++t)
			if (auto theta = random_subset_parity(r, n, 1, 3))
			{
				Polynomial poly(m);
				poly.add_term(random_exponent(r, m, s.degree), r.rational(false));
				img += Superfunction::from_polynomial(d, poly) * Superfunction::monomial(d, *theta, IndexSet{});
			}
		ths.push_back(std::move(img));
	}
	return UnderlyingMorphism(m, n, std::move(xs), std::move(ths));
}

FactoredForm random_factored(RandomSource &r, Dims d, bool unipotent_body, RandomShape s)
{
	FactoredForm form{random_body(r, d.m, d.n, unipotent_body), {}, d.p};
	Dims plain = d.with_p(0);
	for (std::uint32_t bits = 1; bits < (std::uint32_t(1) << d.p); ++bits)
	{
		IndexSet index(bits);
		SuperDerivation x = random_derivation(r, plain, index.parity(), s);
		if (!x.is_zero())
			form.fields.emplace(index, std::move(x));
	}
	return form;
}

SuperMorphism random_point(RandomSource &r, Dims d, bool unipotent_body, RandomShape s)
{
	return expand_factored(random_factored(r, d, unipotent_body, s));
}

GrassmannMorphism random_grassmann_morphism(RandomSource &r, unsigned s, unsigned t)
{
	std::vector<GrassmannElement> images;
	for (unsigned i = 0; i < s; ++i)
		images.push_back(random_grassmann(r, t, 1u, 2));
	return GrassmannMorphism(s, t, std::move(images));
}

} // namespace superdiff
