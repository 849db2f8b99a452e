#include "superdiff/sections.hpp"

#include "superdiff/error.hpp"
#include "superdiff/polynomial.hpp"

#include <algorithm>

namespace superdiff {

LambdaSection::LambdaSection(SuperDerivation field) : field_(std::move(field))
{
	if (field_.parity() != 0u)
		throw ParityError("a section must be an even field");
}

namespace {

std::vector<Exponent> exponents_up_to(unsigned m, unsigned d)
{
	std::vector<Exponent> out;
	Exponent e{std::vector<std::uint32_t>(m, 0)};
	auto rec = [&](auto &self, unsigned i, unsigned left) -> void {
		if (i == m)
		{
			out.push_back(e);
			return;
		}
		for (unsigned k = 0; k <= left; ++k)
		{
			e.powers[i] = k;
			self(self, i + 1, left - k);
		}
		e.powers[i] = 0;
	};
	rec(rec, 0, d);
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<IndexSet> all_subsets(unsigned n)
{
	std::vector<IndexSet> out;
	for (std::uint32_t bits = 0; bits < (std::uint32_t(1) << n); ++bits)
		out.emplace_back(bits);
	std::sort(out.begin(), out.end());
	return out;
}

unsigned long long binomial(unsigned n, unsigned k)
{
	unsigned long long r = 1;
	for (unsigned i = 1; i <= k; ++i)
		r = r * (n - k + i) / i;
	return r;
}

} // namespace

std::vector<LambdaSection> section_basis(unsigned m, unsigned n, unsigned p, unsigned d)
{
	Dims dims{m, n, p};
	auto exps = exponents_up_to(m, d);
	auto thetas = all_subsets(n);
	auto taus = all_subsets(p);
	std::vector<LambdaSection> out;
	for (unsigned slot = 0; slot < m + n; ++slot)
	{
		unsigned shift = slot < m ? 0 : 1;
		for (auto const &e : exps)
		{
			Polynomial poly(m);
			poly.add_term(e, 1);
			Superfunction xpart = Superfunction::from_polynomial(dims, poly);
			for (IndexSet k : thetas)
				for (IndexSet j : taus)
				{
					if ((k.size() + j.size() + shift) % 2 != 0)
						continue;
					Superfunction coeff = xpart * Superfunction::monomial(dims, k, j);
					std::vector<Superfunction> ev(m, Superfunction(dims)), od(n, Superfunction(dims));
					(slot < m ? ev[slot] : od[slot - m]) = coeff;
					out.emplace_back(SuperDerivation(dims, std::move(ev), std::move(od)));
				}
		}
	}
	return out;
}

unsigned long long section_count_formula(unsigned m, unsigned n, unsigned p, unsigned d)
{
	unsigned long long lam_even = p == 0 ? 1 : (1ull << (p - 1));
	unsigned long long lam_odd = p == 0 ? 0 : (1ull << (p - 1));
	unsigned long long poly = binomial(m + d, d);
	unsigned long long k_even = n == 0 ? 1 : (1ull << (n - 1));
	unsigned long long k_odd = n == 0 ? 0 : (1ull << (n - 1));
	// even and odd fields: d/dx carries the coefficient parity, d/dth flips it
	unsigned long long x_even = m * poly * k_even + n * poly * k_odd;
	unsigned long long x_odd = m * poly * k_odd + n * poly * k_even;
	return lam_even * x_even + lam_odd * x_odd;
}

LambdaSection functor_action(GrassmannMorphism const &mor, LambdaSection const &s)
{
	Dims d = s.dims();
	if (d.p != mor.source_n())
		throw DimensionError("functor_action: section has external rank " + std::to_string(d.p) +
		                     ", morphism expects " + std::to_string(mor.source_n()));
	Dims out = d.with_p(mor.target_n());
	std::vector<Superfunction> ev, od;
	for (auto const &c : s.field().even_coeffs())
		ev.push_back(push_external(mor, c));
	for (auto const &c : s.field().odd_coeffs())
		od.push_back(push_external(mor, c));
	return LambdaSection(SuperDerivation(out, std::move(ev), std::move(od)));
}

std::vector<Superfunction> SkeletonFamily::reassemble() const
{
	std::vector<Superfunction> out;
	for (std::size_t i = 0; i < components.size(); ++i)
	{
		Superfunction f(shapes[i]);
		for (auto const &[index, c] : components[i])
			f += Superfunction::tau_prefixed(index, c, shapes[i].p);
		out.push_back(std::move(f));
	}
	return out;
}

SkeletonFamily skeleton_decompose(std::vector<Superfunction> const &images, unsigned p)
{
	SkeletonFamily fam{p, {}, {}};
	for (auto const &f : images)
	{
		if (f.dims().p != 0 && f.dims().p != p)
			throw DimensionError("skeleton_decompose: image has the wrong external rank");
		std::map<IndexSet, Superfunction> comp;
		for (IndexSet tau : f.tau_support())
			comp.emplace(tau, f.tau_component(tau));
		fam.shapes.push_back(f.dims());
		fam.components.push_back(std::move(comp));
	}
	return fam;
}

} // namespace superdiff
