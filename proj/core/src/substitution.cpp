#include "superdiff/substitution.hpp"

#include "superdiff/error.hpp"

namespace superdiff {

namespace {

// Lazily grown table of powers of each x-image.
class PowerCache {
  public:
	explicit PowerCache(std::span<Superfunction const> base, Dims d) : base_(base), dims_(d)
	{
		table_.resize(base.size());
	}

	Superfunction const &get(std::size_t i, unsigned k)
	{
		auto &row = table_[i];
		if (row.empty())
			row.push_back(Superfunction::constant(dims_, 1));
		while (row.size() <= k)
			row.push_back(sf_mul(row.back(), base_[i]));
		return row[k];
	}

  private:
	std::span<Superfunction const> base_;
	Dims dims_;
	std::vector<std::vector<Superfunction>> table_;
};

} // namespace

Superfunction substitute(Superfunction const &f, std::span<Superfunction const> xs,
                         std::span<Superfunction const> ths)
{
	Dims fd = f.dims();
	if (xs.size() != fd.m || ths.size() != fd.n)
		throw DimensionError("substitution needs one image per generator");
	if (xs.empty() && ths.empty())
		return f;

	Dims img = xs.empty() ? ths.front().dims() : xs.front().dims();
	if (fd.p != 0 && img.p != 0 && fd.p != img.p)
		throw DimensionError("external ranks of function and images differ");
	Dims target = img.with_p(std::max(fd.p, img.p));

	std::vector<Superfunction> xl, tl;
	for (auto const &g : xs)
	{
		if (!(g.dims() == img))
			throw DimensionError("substitution images have differing shapes");
		xl.push_back(g.lifted(target));
	}
	for (auto const &g : ths)
	{
		if (!(g.dims() == img))
			throw DimensionError("substitution images have differing shapes");
		tl.push_back(g.lifted(target));
	}

	PowerCache powers(xl, target);
	Superfunction result(target);
	for (auto const &[key, poly] : f.terms())
	{
		Superfunction value(target);
		for (auto const &[e, c] : poly.terms())
		{
			Superfunction mono = Superfunction::constant(target, c);
			for (std::size_t i = 0; i < e.powers.size(); ++i)
				if (e.powers[i])
					mono = sf_mul(mono, powers.get(i, e.powers[i]));
			value += mono;
		}
		for (unsigned j : key.theta.indices())
			value = sf_mul(value, tl[j - 1]);
		if (!key.tau.empty())
			value = sf_mul(value, Superfunction::monomial(target, IndexSet{}, key.tau));
		result += value;
	}
	return result;
}

UnderlyingMorphism::UnderlyingMorphism(unsigned m, unsigned n, std::vector<Superfunction> images_x,
                                       std::vector<Superfunction> images_th)
    : m_(m), n_(n), images_x_(std::move(images_x)), images_th_(std::move(images_th))
{
	Dims d{m, n, 0};
	if (images_x_.size() != m || images_th_.size() != n)
		throw DimensionError("underlying morphism needs one image per generator");
	for (std::size_t i = 0; i < images_x_.size(); ++i)
	{
		if (!(images_x_[i].dims() == d))
			throw DimensionError("image of x" + std::to_string(i + 1) + " has the wrong shape");
		if (!images_x_[i].is_even())
			throw ParityError("image of x" + std::to_string(i + 1) + " is not even");
	}
	for (std::size_t j = 0; j < images_th_.size(); ++j)
	{
		if (!(images_th_[j].dims() == d))
			throw DimensionError("image of th" + std::to_string(j + 1) + " has the wrong shape");
		if (!images_th_[j].is_zero() && !images_th_[j].is_odd())
			throw ParityError("image of th" + std::to_string(j + 1) + " is not odd");
	}
}

UnderlyingMorphism UnderlyingMorphism::identity(unsigned m, unsigned n)
{
	Dims d{m, n, 0};
	std::vector<Superfunction> xs, ths;
	for (unsigned i = 1; i <= m; ++i)
		xs.push_back(Superfunction::x(d, i));
	for (unsigned j = 1; j <= n; ++j)
		ths.push_back(Superfunction::theta(d, j));
	UnderlyingMorphism id(m, n, xs, ths);
	id.inverse_ = std::make_shared<UnderlyingMorphism const>(UnderlyingMorphism(m, n, xs, ths));
	return id;
}

Superfunction UnderlyingMorphism::operator()(Superfunction const &f) const
{
	Dims fd = f.dims();
	if (fd.m != m_ || fd.n != n_)
		throw DimensionError("function shape does not match the morphism");
	return substitute(f, images_x_, images_th_);
}

bool UnderlyingMorphism::is_identity() const
{
	Dims d = dims();
	for (unsigned i = 0; i < m_; ++i)
		if (!(images_x_[i] == Superfunction::x(d, i + 1)))
			return false;
	for (unsigned j = 0; j < n_; ++j)
		if (!(images_th_[j] == Superfunction::theta(d, j + 1)))
			return false;
	return true;
}

UnderlyingMorphism const &UnderlyingMorphism::inverse() const
{
	if (!inverse_)
		throw InvertibilityError("underlying morphism carries no certified inverse");
	return *inverse_;
}

UnderlyingMorphism UnderlyingMorphism::without_inverse() const
{
	UnderlyingMorphism r = *this;
	r.inverse_.reset();
	return r;
}

UnderlyingMorphism UnderlyingMorphism::with_inverse(UnderlyingMorphism const &inv) const
{
	if (inv.m_ != m_ || inv.n_ != n_)
		throw DimensionError("inverse has a different shape");
	UnderlyingMorphism a = without_inverse();
	UnderlyingMorphism b = inv.without_inverse();
	if (!compose(a, b).is_identity() || !compose(b, a).is_identity())
		throw InvertibilityError("supplied inverse does not invert the morphism");
	a.inverse_ = std::make_shared<UnderlyingMorphism const>(std::move(b));
	return a;
}

UnderlyingMorphism UnderlyingMorphism::inverted() const
{
	UnderlyingMorphism r = inverse().without_inverse();
	r.inverse_ = std::make_shared<UnderlyingMorphism const>(without_inverse());
	return r;
}

UnderlyingMorphism UnderlyingMorphism::lifted(unsigned m, unsigned n) const
{
	if (m < m_ || n < n_)
		throw DimensionError("cannot lower the shape of a morphism");
	if (m == m_ && n == n_)
		return *this;
	Dims d{m, n, 0};
	std::vector<Superfunction> xs, ths;
	for (unsigned i = 1; i <= m; ++i)
		xs.push_back(i <= m_ ? images_x_[i - 1].lifted(d) : Superfunction::x(d, i));
	for (unsigned j = 1; j <= n; ++j)
		ths.push_back(j <= n_ ? images_th_[j - 1].lifted(d) : Superfunction::theta(d, j));
	UnderlyingMorphism r(m, n, std::move(xs), std::move(ths));
	if (inverse_)
		r.inverse_ = std::make_shared<UnderlyingMorphism const>(inverse_->lifted(m, n));
	return r;
}

UnderlyingMorphism compose(UnderlyingMorphism const &outer, UnderlyingMorphism const &inner)
{
	if (outer.m() != inner.m() || outer.n() != inner.n())
		throw DimensionError("morphisms act on different superdomains");
	std::vector<Superfunction> xs, ths;
	for (auto const &g : inner.images_x())
		xs.push_back(outer(g));
	for (auto const &g : inner.images_th())
		ths.push_back(outer(g));
	UnderlyingMorphism r(outer.m(), outer.n(), std::move(xs), std::move(ths));
	if (outer.has_inverse() && inner.has_inverse())
	{
		UnderlyingMorphism inv = compose(inner.inverse().without_inverse(), outer.inverse().without_inverse());
		return r.with_inverse(inv);
	}
	return r;
}

} // namespace superdiff
