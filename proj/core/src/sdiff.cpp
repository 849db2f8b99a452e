#include "superdiff/sdiff.hpp"

#include "superdiff/error.hpp"

namespace superdiff {

SuperMorphism certified(SuperMorphism const &phi)
{
	if (phi.has_body_inverse())
		return phi;
	InvertibilityVerdict v = certify_inverse(phi.underlying());
	if (!v)
		throw InvertibilityError("underlying morphism is not certified invertible (" + v.reason + ")");
	return phi.with_body_inverse(v.certified->inverse());
}

InvertibilityVerdict is_invertible(SuperMorphism const &phi)
{
	return certify_inverse(phi.underlying());
}

namespace {

Dims common(SuperMorphism const &a, SuperMorphism const &b, char const *what)
{
	Dims da = a.dims(), db = b.dims();
	if (da.p != db.p)
		throw DimensionError(std::string(what) + ": external ranks differ (" + std::to_string(da.p) + " vs " +
		                     std::to_string(db.p) + ")");
	return Dims{std::max(da.m, db.m), std::max(da.n, db.n), da.p};
}

} // namespace

SuperMorphism compose(SuperMorphism const &phi, SuperMorphism const &psi)
{
	Dims d = common(phi, psi, "compose");
	SuperMorphism a = phi.lifted(d), b = psi.lifted(d);
	std::vector<Superfunction> xs, ths;
	for (auto const &g : b.images_x())
		xs.push_back(hom_apply(a, g));
	for (auto const &g : b.images_th())
		ths.push_back(hom_apply(a, g));
	SuperMorphism r(d, std::move(xs), std::move(ths));
	if (a.has_body_inverse() && b.has_body_inverse())
	{
		UnderlyingMorphism body = compose(a.underlying(), b.underlying());
		return r.with_body_inverse(body.inverse());
	}
	return r;
}

SuperMorphism compose_via_factored(SuperMorphism const &phi, SuperMorphism const &psi)
{
	Dims d = common(phi, psi, "compose");
	FactoredForm fa = factorize(certified(phi.lifted(d)));
	FactoredForm fb = factorize(certified(psi.lifted(d)));
	UnderlyingMorphism body = compose(fa.body, fb.body);

	SuperDerivation dx = fa.exponent();
	SuperDerivation dy(d);
	for (auto const &[index, y] : fb.fields)
		dy += SuperDerivation::tau_prefixed(index, pushforward(fa.body.inverted(), y), d.p);

	std::vector<Superfunction> xs, ths;
	for (auto const &g : body.images_x())
		xs.push_back(exp_series(dx, exp_series(dy, g.lifted(d))));
	for (auto const &g : body.images_th())
		ths.push_back(exp_series(dx, exp_series(dy, g.lifted(d))));
	return SuperMorphism(d, std::move(xs), std::move(ths)).with_body_inverse(body.inverse());
}

SuperMorphism invert(SuperMorphism const &phi)
{
	FactoredForm f = factorize(certified(phi));
	Dims d = phi.dims();
	UnderlyingMorphism body_inv = f.body.inverted();
	SuperDerivation minus = -f.exponent();
	std::vector<Superfunction> xs, ths;
	for (unsigned i = 1; i <= d.m; ++i)
		xs.push_back(body_inv(exp_series(minus, Superfunction::x(d, i))));
	for (unsigned j = 1; j <= d.n; ++j)
		ths.push_back(body_inv(exp_series(minus, Superfunction::theta(d, j))));
	return SuperMorphism(d, std::move(xs), std::move(ths)).with_body_inverse(f.body);
}

SplitPoint split(SuperMorphism const &phi)
{
	SuperMorphism c = certified(phi);
	UnderlyingMorphism body = c.underlying();
	SuperMorphism nil = compose(c, SuperMorphism::constant_family(body.inverted(), c.dims().p));
	return {nil, body};
}

SuperMorphism recombine(SplitPoint const &s)
{
	if (!s.nil.underlying().is_identity())
		throw MalformedMorphismError("recombine: nilpotent factor does not reduce to the identity");
	return compose(s.nil, SuperMorphism::constant_family(s.body, s.nil.dims().p));
}

SuperMorphism conjugate(UnderlyingMorphism const &g, SuperMorphism const &n)
{
	InvertibilityVerdict v = certify_inverse(g);
	if (!v)
		throw InvertibilityError("conjugate: " + v.reason);
	unsigned p = n.dims().p;
	return compose(compose(SuperMorphism::constant_family(*v.certified, p), n),
	               SuperMorphism::constant_family(v.certified->inverted(), p));
}

SuperMorphism functor_map(GrassmannMorphism const &mor, SuperMorphism const &phi)
{
	return gr_push(mor, phi);
}

SuperDerivation commutator(SuperDerivation const &d, SuperDerivation const &z)
{
	Dims dims{d.dims().m, d.dims().n, std::max(d.dims().p, z.dims().p)};
	SuperDerivation dl = d.lifted(dims), zl = z.lifted(dims);
	return derivation_from_generators(dims.with_p(0), dims, [&](Superfunction const &g) {
		Superfunction gl = g.lifted(dims);
		return der_apply(dl, der_apply(zl, gl)) - der_apply(zl, der_apply(dl, gl));
	});
}

SuperDerivation differential_action(SuperMorphism const &phi, SuperDerivation const &y)
{
	FactoredForm f = factorize(certified(phi));
	Dims d = phi.dims();
	if (y.dims().m != d.m || y.dims().n != d.n)
		throw DimensionError("differential_action: superdomains differ");
	if (y.dims().p != 0 && y.dims().p != d.p)
		throw DimensionError("differential_action: external ranks differ");
	SuperDerivation dexp = f.exponent();
	SuperDerivation term = pushforward(f.body, y.lifted(d));
	SuperDerivation sum = term;
	for (unsigned k = 1; k <= d.p + 1 && !term.is_zero(); ++k)
	{
		term = commutator(dexp, term);
		term *= Rational(-1, k);
		sum += term;
	}
	if (!term.is_zero())
		throw DomainError("differential_action: series did not terminate");
	return sum;
}

} // namespace superdiff
