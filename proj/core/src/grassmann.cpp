#include "superdiff/grassmann.hpp"

#include "superdiff/error.hpp"

namespace superdiff {

namespace {

void check_rank(unsigned n)
{
	if (n > kMaxOddGenerators)
		throw DimensionError("Grassmann rank " + std::to_string(n) + " exceeds " +
		                     std::to_string(kMaxOddGenerators));
}

} // namespace

GrassmannElement::GrassmannElement(unsigned n) : n_(n) { check_rank(n); }

GrassmannElement::GrassmannElement(unsigned n, Terms terms) : n_(n)
{
	check_rank(n);
	for (auto &[s, c] : terms)
	{
		if (s.max_index() > n)
			throw DimensionError("term t[" + s.to_string() + "] outside rank " + std::to_string(n));
		add_term(s, c);
	}
}

GrassmannElement GrassmannElement::generator(unsigned n, unsigned i)
{
	if (i == 0 || i > n)
		throw DimensionError("generator index out of range");
	return monomial(n, IndexSet::single(i));
}

GrassmannElement GrassmannElement::monomial(unsigned n, IndexSet s, Rational c)
{
	return GrassmannElement(n, Terms{{s, std::move(c)}});
}

Rational GrassmannElement::coefficient(IndexSet s) const
{
	auto it = terms_.find(s);
	return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<unsigned> GrassmannElement::parity() const
{
	std::optional<unsigned> p;
	for (auto const &[s, c] : terms_)
	{
		if (p && *p != s.parity())
			return std::nullopt;
		p = s.parity();
	}
	return p.value_or(0);
}

void GrassmannElement::add_term(IndexSet s, Rational const &c)
{
	if (superdiff::is_zero(c))
		return;
	auto [it, inserted] = terms_.try_emplace(s, c);
	if (!inserted)
	{
		it->second += c;
		if (superdiff::is_zero(it->second))
			terms_.erase(it);
	}
}

GrassmannElement GrassmannElement::operator-() const
{
	GrassmannElement r = *this;
	for (auto &[s, c] : r.terms_)
		c = -c;
	return r;
}

GrassmannElement &GrassmannElement::operator+=(GrassmannElement const &o)
{
	if (n_ != o.n_)
		throw DimensionError("Grassmann ranks differ");
	for (auto const &[s, c] : o.terms_)
		add_term(s, c);
	return *this;
}

GrassmannElement &GrassmannElement::operator-=(GrassmannElement const &o)
{
	if (n_ != o.n_)
		throw DimensionError("Grassmann ranks differ");
	for (auto const &[s, c] : o.terms_)
		add_term(s, -c);
	return *this;
}

GrassmannElement &GrassmannElement::operator*=(Rational const &c)
{
	if (superdiff::is_zero(c))
	{
		terms_.clear();
		return *this;
	}
	for (auto &[s, v] : terms_)
		v *= c;
	return *this;
}

GrassmannElement gr_mul(GrassmannElement const &a, GrassmannElement const &b)
{
	if (a.n() != b.n())
		throw DimensionError("Grassmann ranks differ: " + std::to_string(a.n()) + " vs " +
		                     std::to_string(b.n()));
	GrassmannElement::Terms out;
	for (auto const &[s, c] : a.terms())
		for (auto const &[t, d] : b.terms())
		{
			if (s.intersects(t))
				continue;
			Rational v = c * d;
			if (merge_sign(s, t) < 0)
				v = -v;
			auto [it, inserted] = out.try_emplace(s | t, v);
			if (!inserted)
				it->second += v;
		}
	return GrassmannElement(a.n(), std::move(out));
}

Rational eps(GrassmannElement const &a) { return a.coefficient(IndexSet{}); }

GrassmannElement unit_embed(Rational const &r, unsigned n)
{
	return GrassmannElement::monomial(n, IndexSet{}, r);
}

GrassmannElement power(GrassmannElement const &a, unsigned k)
{
	GrassmannElement r = unit_embed(1, a.n());
	for (unsigned i = 0; i < k; ++i)
		r = gr_mul(r, a);
	return r;
}

GrassmannMorphism::GrassmannMorphism(unsigned source_n, unsigned target_n,
                                     std::vector<GrassmannElement> images)
    : source_n_(source_n), target_n_(target_n), images_(std::move(images))
{
	check_rank(source_n);
	check_rank(target_n);
	if (images_.size() != source_n)
		throw DimensionError("Grassmann morphism needs one image per source generator");
	for (std::size_t i = 0; i < images_.size(); ++i)
	{
		if (images_[i].n() != target_n)
			throw DimensionError("image of t[" + std::to_string(i + 1) + "] has wrong rank");
		auto p = images_[i].parity();
		if (!p || (*p != 1 && !images_[i].is_zero()))
			throw ParityError("image of t[" + std::to_string(i + 1) + "] is not odd");
	}
}

GrassmannMorphism GrassmannMorphism::identity(unsigned n)
{
	std::vector<GrassmannElement> images;
	for (unsigned i = 1; i <= n; ++i)
		images.push_back(GrassmannElement::generator(n, i));
	return GrassmannMorphism(n, n, std::move(images));
}

GrassmannMorphism GrassmannMorphism::initial(unsigned n) { return GrassmannMorphism(0, n, {}); }

GrassmannMorphism GrassmannMorphism::terminal(unsigned n)
{
	return GrassmannMorphism(n, 0, std::vector<GrassmannElement>(n, GrassmannElement(0)));
}

GrassmannElement GrassmannMorphism::image_of(IndexSet s) const
{
	GrassmannElement r = unit_embed(1, target_n_);
	for (unsigned i : s.indices())
	{
		if (i > source_n_)
			throw DimensionError("t[" + std::to_string(i) + "] outside source rank");
		r = gr_mul(r, images_[i - 1]);
	}
	return r;
}

GrassmannElement gr_apply(GrassmannMorphism const &m, GrassmannElement const &a)
{
	if (a.n() != m.source_n())
		throw DimensionError("element rank does not match morphism source");
	GrassmannElement r(m.target_n());
	for (auto const &[s, c] : a.terms())
		r += c * m.image_of(s);
	return r;
}

GrassmannMorphism gr_compose(GrassmannMorphism const &m2, GrassmannMorphism const &m1)
{
	if (m1.target_n() != m2.source_n())
		throw DimensionError("Grassmann morphisms are not composable");
	std::vector<GrassmannElement> images;
	for (auto const &img : m1.images())
		images.push_back(gr_apply(m2, img));
	return GrassmannMorphism(m1.source_n(), m2.target_n(), std::move(images));
}

} // namespace superdiff
