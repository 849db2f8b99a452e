#include "superdiff/derivation.hpp"

#include "superdiff/error.hpp"

#include <algorithm>
#include <numeric>

namespace superdiff {

namespace {

// Common shape of two operands whose external ranks are equal or zero.
Dims common_dims(Dims a, Dims b, char const *what)
{
	if (a.m != b.m || a.n != b.n)
		throw DimensionError(std::string(what) + ": superdomains differ");
	if (a.p != b.p && a.p != 0 && b.p != 0)
		throw DimensionError(std::string(what) + ": external ranks differ");
	return a.with_p(std::max(a.p, b.p));
}

} // namespace

SuperDerivation::SuperDerivation(Dims d)
    : dims_(d), even_(d.m, Superfunction(d)), odd_(d.n, Superfunction(d))
{}

SuperDerivation::SuperDerivation(Dims d, std::vector<Superfunction> even_coeffs,
                                 std::vector<Superfunction> odd_coeffs)
    : dims_(d), even_(std::move(even_coeffs)), odd_(std::move(odd_coeffs))
{
	if (even_.size() != d.m || odd_.size() != d.n)
		throw DimensionError("derivation needs one coefficient per coordinate");
	for (auto const &c : even_)
		if (!(c.dims() == d))
			throw DimensionError("derivation coefficient has the wrong shape");
	for (auto const &c : odd_)
		if (!(c.dims() == d))
			throw DimensionError("derivation coefficient has the wrong shape");
}

SuperDerivation SuperDerivation::partial_x(Dims d, unsigned i)
{
	SuperDerivation x(d);
	x.even_.at(i - 1) = Superfunction::constant(d, 1);
	return x;
}

SuperDerivation SuperDerivation::partial_theta(Dims d, unsigned j)
{
	SuperDerivation x(d);
	x.odd_.at(j - 1) = Superfunction::constant(d, 1);
	return x;
}

bool SuperDerivation::is_zero() const
{
	return std::all_of(even_.begin(), even_.end(), [](auto const &c) { return c.is_zero(); }) &&
	       std::all_of(odd_.begin(), odd_.end(), [](auto const &c) { return c.is_zero(); });
}

std::optional<unsigned> SuperDerivation::parity() const
{
	std::optional<unsigned> p;
	auto visit = [&](Superfunction const &c, unsigned shift) {
		if (c.is_zero())
			return true;
		auto q = c.parity();
		if (!q)
			return false;
		unsigned v = (*q + shift) & 1u;
		if (p && *p != v)
			return false;
		p = v;
		return true;
	};
	for (auto const &c : even_)
		if (!visit(c, 0))
			return std::nullopt;
	for (auto const &c : odd_)
		if (!visit(c, 1))
			return std::nullopt;
	return p.value_or(0);
}

SuperDerivation SuperDerivation::operator-() const
{
	SuperDerivation r = *this;
	for (auto &c : r.even_)
		c = -c;
	for (auto &c : r.odd_)
		c = -c;
	return r;
}

SuperDerivation &SuperDerivation::operator+=(SuperDerivation const &o)
{
	if (!(dims_ == o.dims_))
		throw DimensionError("adding derivations of different shapes");
	for (std::size_t i = 0; i < even_.size(); ++i)
		even_[i] += o.even_[i];
	for (std::size_t j = 0; j < odd_.size(); ++j)
		odd_[j] += o.odd_[j];
	return *this;
}

SuperDerivation &SuperDerivation::operator-=(SuperDerivation const &o)
{
	return *this += -o;
}

SuperDerivation &SuperDerivation::operator*=(Rational const &c)
{
	for (auto &e : even_)
		e *= c;
	for (auto &e : odd_)
		e *= c;
	return *this;
}

SuperDerivation SuperDerivation::left_multiplied(Superfunction const &s) const
{
	Dims d = common_dims(dims_, s.dims(), "left multiplication");
	Superfunction sl = s.lifted(d);
	SuperDerivation r(d);
	for (std::size_t i = 0; i < even_.size(); ++i)
		r.even_[i] = sf_mul(sl, even_[i].lifted(d));
	for (std::size_t j = 0; j < odd_.size(); ++j)
		r.odd_[j] = sf_mul(sl, odd_[j].lifted(d));
	return r;
}

SuperDerivation SuperDerivation::lifted(Dims d) const
{
	if (dims_ == d)
		return *this;
	if (!dims_.fits_in(d))
		throw DimensionError("cannot embed a derivation into a smaller algebra");
	SuperDerivation r(d);
	for (std::size_t i = 0; i < even_.size(); ++i)
		r.even_[i] = even_[i].lifted(d);
	for (std::size_t j = 0; j < odd_.size(); ++j)
		r.odd_[j] = odd_[j].lifted(d);
	return r;
}

SuperDerivation SuperDerivation::tau_component(IndexSet tau) const
{
	SuperDerivation r(dims_.with_p(0));
	for (std::size_t i = 0; i < even_.size(); ++i)
		r.even_[i] = even_[i].tau_component(tau);
	for (std::size_t j = 0; j < odd_.size(); ++j)
		r.odd_[j] = odd_[j].tau_component(tau);
	return r;
}

SuperDerivation SuperDerivation::tau_prefixed(IndexSet tau, SuperDerivation const &x, unsigned p)
{
	if (x.dims_.p != 0)
		throw DimensionError("tau_prefixed expects a field without external generators");
	SuperDerivation r(x.dims_.with_p(p));
	for (std::size_t i = 0; i < x.even_.size(); ++i)
		r.even_[i] = Superfunction::tau_prefixed(tau, x.even_[i], p);
	for (std::size_t j = 0; j < x.odd_.size(); ++j)
		r.odd_[j] = Superfunction::tau_prefixed(tau, x.odd_[j], p);
	return r;
}

Superfunction der_apply(SuperDerivation const &x, Superfunction const &f)
{
	Dims d = common_dims(x.dims(), f.dims(), "der_apply");
	SuperDerivation xl = x.lifted(d);
	Superfunction fl = f.lifted(d);
	Superfunction r(d);
	for (unsigned i = 1; i <= d.m; ++i)
		if (!xl.on_x(i).is_zero())
			r += sf_mul(xl.on_x(i), fl.partial_x(i));
	for (unsigned j = 1; j <= d.n; ++j)
		if (!xl.on_theta(j).is_zero())
			r += sf_mul(xl.on_theta(j), fl.partial_theta(j));
	return r;
}

SuperDerivation bracket(SuperDerivation const &x, SuperDerivation const &y)
{
	auto px = x.parity();
	auto py = y.parity();
	if (!px || !py)
		throw ParityError("bracket needs parity-homogeneous fields");
	Dims d = common_dims(x.dims(), y.dims(), "bracket");
	SuperDerivation xl = x.lifted(d), yl = y.lifted(d);
	bool minus = (*px & *py) == 0;
	Dims gens = d.with_p(0);
	return derivation_from_generators(gens, d, [&](Superfunction const &g) {
		Superfunction gl = g.lifted(d);
		Superfunction xy = der_apply(xl, der_apply(yl, gl));
		Superfunction yx = der_apply(yl, der_apply(xl, gl));
		return minus ? xy - yx : xy + yx;
	});
}

int filtration_degree(SuperDerivation const &x)
{
	int deg = kInfiniteDegree;
	for (auto const &c : x.even_coeffs())
		if (!c.is_zero())
			deg = std::min(deg, c.j_degree());
	for (auto const &c : x.odd_coeffs())
		if (!c.is_zero())
			deg = std::min(deg, c.j_degree() - 1);
	return deg;
}

Superfunction exp_series(SuperDerivation const &d, Superfunction const &f)
{
	Dims dims = common_dims(d.dims(), f.dims(), "exp_series");
	Superfunction term = f.lifted(dims);
	Superfunction sum = term;
	unsigned const limit = dims.n + dims.p + 2;
	for (unsigned k = 1;; ++k)
	{
		term = der_apply(d, term);
		if (term.is_zero())
			return sum;
		if (k > limit)
			throw DomainError("exponential series of a non-nilpotent field does not terminate");
		term *= Rational(1, k);
		sum += term;
	}
}

SuperDerivation pushforward(UnderlyingMorphism const &phi0, SuperDerivation const &x)
{
	Dims d = x.dims();
	if (d.m != phi0.m() || d.n != phi0.n())
		throw DimensionError("pushforward: superdomains differ");
	UnderlyingMorphism const &inv = phi0.inverse();
	return derivation_from_generators(d.with_p(0), d, [&](Superfunction const &g) {
		return inv(der_apply(x, phi0(g)));
	});
}

UnderlyingMorphism exp_nilpotent(SuperDerivation const &x)
{
	if (x.dims().p != 0)
		throw DomainError("exp_nilpotent acts on fields without external generators");
	if (x.parity() != 0u)
		throw DomainError("exp_nilpotent needs an even field");
	if (filtration_degree(x) < 2)
		throw DomainError("exp_nilpotent needs filtration degree >= 2");
	Dims d = x.dims();
	SuperDerivation neg = -x;
	std::vector<Superfunction> xs, ths, ixs, iths;
	for (unsigned i = 1; i <= d.m; ++i)
	{
		xs.push_back(exp_series(x, Superfunction::x(d, i)));
		ixs.push_back(exp_series(neg, Superfunction::x(d, i)));
	}
	for (unsigned j = 1; j <= d.n; ++j)
	{
		ths.push_back(exp_series(x, Superfunction::theta(d, j)));
		iths.push_back(exp_series(neg, Superfunction::theta(d, j)));
	}
	UnderlyingMorphism phi(d.m, d.n, std::move(xs), std::move(ths));
	return phi.with_inverse(UnderlyingMorphism(d.m, d.n, std::move(ixs), std::move(iths)));
}

bool is_identity_mod_j(UnderlyingMorphism const &phi, unsigned k)
{
	Dims d = phi.dims();
	for (unsigned i = 1; i <= d.m; ++i)
		if (!reduce_mod_j(phi.images_x()[i - 1] - Superfunction::x(d, i), k).is_zero())
			return false;
	for (unsigned j = 1; j <= d.n; ++j)
		if (!reduce_mod_j(phi.images_th()[j - 1] - Superfunction::theta(d, j), k).is_zero())
			return false;
	return true;
}

SuperDerivation log_unipotent(UnderlyingMorphism const &phi)
{
	if (!is_identity_mod_j(phi, 2))
		throw DomainError("log_unipotent needs an automorphism that is the identity modulo J^2");
	Dims d = phi.dims();
	unsigned const limit = d.n + 2;
	return derivation_from_generators(d, d, [&](Superfunction const &g) {
		// (phi - id)^l applied to g, summed with alternating signs
		Superfunction h = g;
		Superfunction sum(d);
		for (unsigned l = 1;; ++l)
		{
			h = phi(h) - h;
			if (h.is_zero())
				return sum;
			if (l > limit)
				throw DomainError("log series does not terminate");
			Rational c(l % 2 ? 1 : -1, l);
			c.canonicalize();
			sum += c * h;
		}
	});
}

Superfunction apply_prefixed(PrefixedOperator const &op, Superfunction const &f)
{
	Superfunction v = der_apply(op.field, f);
	if (op.prefix.empty())
		return v;
	return sf_mul(Superfunction::monomial(v.dims(), IndexSet{}, op.prefix), v);
}

Superfunction symmetrize_apply(std::vector<PrefixedOperator> const &ops, Superfunction const &f)
{
	if (ops.empty())
		return f;
	Dims d = f.dims();
	for (auto const &op : ops)
	{
		d = common_dims(d, op.field.dims(), "symmetrize_apply");
		if (op.prefix.max_index() > d.p)
			d.p = op.prefix.max_index();
	}
	std::vector<PrefixedOperator> lifted;
	for (auto const &op : ops)
	{
		if (op.field.dims().p != 0 && op.field.dims().p != d.p)
			throw DimensionError("symmetrize_apply: external ranks differ");
		lifted.push_back({op.prefix, op.field.lifted(d)});
	}

	std::vector<std::size_t> order(ops.size());
	std::iota(order.begin(), order.end(), 0);
	Superfunction total(d);
	Superfunction fl = f.lifted(d);
	do
	{
		// a_{order[0]} o ... o a_{order[k-1]}: the last one acts first
		Superfunction v = fl;
		for (auto it = order.rbegin(); it != order.rend(); ++it)
			v = apply_prefixed(lifted[*it], v);
		total += v;
	} while (std::next_permutation(order.begin(), order.end()));
	total *= Rational(1) / factorial(unsigned(ops.size()));
	return total;
}

} // namespace superdiff
