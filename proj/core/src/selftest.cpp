#include "superdiff/selftest.hpp"

#include "superdiff/random.hpp"
#include "superdiff/sdiff.hpp"
#include "superdiff/text.hpp"

#include <functional>
#include <optional>

namespace superdiff {

namespace {

using Check = std::function<std::optional<std::string>(RandomSource &)>;

std::optional<std::string> expect(bool ok, char const *what)
{
	if (ok)
		return std::nullopt;
	return std::string(what);
}

int sign(unsigned a, unsigned b) { return (a & b & 1u) ? -1 : 1; }

std::vector<std::pair<std::string, Check>> properties()
{
	std::vector<std::pair<std::string, Check>> out;

	out.emplace_back("grassmann.supercommutative", [](RandomSource &r) {
		unsigned pa = unsigned(r.below(2)), pb = unsigned(r.below(2));
		auto a = random_grassmann(r, 4, pa), b = random_grassmann(r, 4, pb);
		return expect(a * b == Rational(sign(pa, pb)) * (b * a), "ab != (-1)^{|a||b|} ba");
	});
	out.emplace_back("grassmann.associative", [](RandomSource &r) {
		auto a = random_grassmann(r, 4, std::nullopt), b = random_grassmann(r, 4, std::nullopt),
		     c = random_grassmann(r, 4, std::nullopt);
		return expect((a * b) * c == a * (b * c), "(ab)c != a(bc)");
	});
	out.emplace_back("superfunction.supercommutative", [](RandomSource &r) {
		Dims d{2, 2, 2};
		unsigned pa = unsigned(r.below(2)), pb = unsigned(r.below(2));
		auto f = random_superfunction(r, d, pa), g = random_superfunction(r, d, pb);
		return expect(f * g == Rational(sign(pa, pb)) * (g * f), "fg != (-1)^{|f||g|} gf");
	});
	out.emplace_back("superfunction.associative", [](RandomSource &r) {
		Dims d{2, 2, 2};
		auto f = random_superfunction(r, d, std::nullopt), g = random_superfunction(r, d, std::nullopt),
		     h = random_superfunction(r, d, std::nullopt);
		return expect((f * g) * h == f * (g * h), "(fg)h != f(gh)");
	});
	out.emplace_back("derivation.leibniz", [](RandomSource &r) {
		Dims d{2, 2, 2};
		unsigned px = unsigned(r.below(2)), pf = unsigned(r.below(2));
		auto x = random_derivation(r, d, px);
		auto f = random_superfunction(r, d, pf), g = random_superfunction(r, d, std::nullopt);
		Superfunction rhs = der_apply(x, f) * g + Rational(sign(px, pf)) * (f * der_apply(x, g));
		return expect(der_apply(x, f * g) == rhs, "X(fg) != X(f)g + (-1)^{|X||f|} f X(g)");
	});
	out.emplace_back("derivation.jacobi", [](RandomSource &r) {
		Dims d{1, 2, 1};
		RandomShape s{1, 2};
		unsigned px = unsigned(r.below(2)), py = unsigned(r.below(2)), pz = unsigned(r.below(2));
		auto x = random_derivation(r, d, px, s), y = random_derivation(r, d, py, s), z = random_derivation(r, d, pz, s);
		// [X,[Y,Z]] = [[X,Y],Z] + (-1)^{|X||Y|} [Y,[X,Z]]
		SuperDerivation lhs = bracket(x, bracket(y, z));
		SuperDerivation rhs = bracket(bracket(x, y), z) + Rational(sign(px, py)) * bracket(y, bracket(x, z));
		return expect(lhs == rhs, "super Jacobi identity fails");
	});
	out.emplace_back("nilpotent.exp_log", [](RandomSource &r) {
		auto x = random_filtered_field(r, 2, 3, 2);
		if (!(log_unipotent(exp_nilpotent(x)) == x))
			return std::optional<std::string>("log(exp X) != X");
		auto phi = random_unipotent(r, 2, 3);
		return expect(exp_nilpotent(log_unipotent(phi)) == phi, "exp(log phi) != phi");
	});
	out.emplace_back("sdiff.factor_round_trip", [](RandomSource &r) {
		Dims d{2, 2, unsigned(r.below(3)) + 1};
		FactoredForm f = random_factored(r, d);
		SuperMorphism phi = expand_factored(f);
		SuperMorphism bare(d, phi.images_x(), phi.images_th());
		FactoredForm back = factorize(bare);
		if (!(back == f))
			return std::optional<std::string>("factorize(expand(F)) != F");
		return expect(expand_factored(back) == bare, "expand(factorize(phi)) != phi");
	});
	out.emplace_back("sdiff.inverse", [](RandomSource &r) {
		Dims d{2, 2, 2};
		SuperMorphism phi = random_point(r, d, r.coin());
		SuperMorphism inv = invert(phi);
		SuperMorphism id = SuperMorphism::identity(d);
		return expect(compose(phi, inv) == id && compose(inv, phi) == id, "phi phi^{-1} != 1");
	});
	out.emplace_back("sdiff.associative", [](RandomSource &r) {
		Dims d{2, 2, 2};
		RandomShape s{1, 2};
		auto a = random_point(r, d, false, s), b = random_point(r, d, false, s), c = random_point(r, d, false, s);
		return expect(compose(compose(a, b), c) == compose(a, compose(b, c)), "(ab)c != a(bc)");
	});
	out.emplace_back("sdiff.compose_oracle", [](RandomSource &r) {
		Dims d{2, 2, 2};
		auto a = random_point(r, d), b = random_point(r, d);
		return expect(compose(a, b) == compose_via_factored(a, b), "substitution and factored products differ");
	});
	out.emplace_back("sdiff.functorial", [](RandomSource &r) {
		Dims d{2, 2, 3};
		RandomShape s{1, 2};
		auto mor = random_grassmann_morphism(r, 3, 2);
		auto a = random_point(r, d, false, s), b = random_point(r, d, false, s);
		if (!(functor_map(mor, compose(a, b)) == compose(functor_map(mor, a), functor_map(mor, b))))
			return std::optional<std::string>("push does not respect products");
		return expect(functor_map(mor, SuperMorphism::identity(d)) == SuperMorphism::identity(d.with_p(2)),
		              "push does not preserve the unit");
	});
	out.emplace_back("sdiff.semidirect", [](RandomSource &r) {
		Dims d{2, 2, 2};
		auto a = random_point(r, d), b = random_point(r, d);
		SplitPoint sa = split(a), sb = split(b);
		if (!(recombine(sa) == a))
			return std::optional<std::string>("recombine(split(phi)) != phi");
		SuperMorphism nil = compose(sa.nil, conjugate(sa.body, sb.nil));
		SplitPoint sab = split(compose(a, b));
		return expect(sab.nil == nil && sab.body == compose(sa.body, sb.body), "semidirect product law fails");
	});
	out.emplace_back("sdiff.differential", [](RandomSource &r) {
		Dims d{2, 2, 2};
		auto phi = random_point(r, d);
		auto y = random_derivation(r, d, unsigned(r.below(2)));
		auto z = random_derivation(r, d, unsigned(r.below(2)));
		Superfunction lam = Superfunction::constant(d, r.rational()) +
		                    Superfunction::monomial(d, IndexSet{}, IndexSet{1, 2}, r.rational());
		SuperDerivation lhs = differential_action(phi, y.left_multiplied(lam) + z);
		SuperDerivation rhs = differential_action(phi, y).left_multiplied(lam) + differential_action(phi, z);
		if (!(lhs == rhs))
			return std::optional<std::string>("d phi is not Lambda_0-linear");
		// X o phi0 = phi0 o d phi0 (X) on a plain point
		UnderlyingMorphism body = random_body(r, 2, 2);
		auto x = random_derivation(r, d.with_p(0), unsigned(r.below(2)));
		SuperDerivation dx = differential_action(SuperMorphism::constant_family(body, 0), x);
		auto f = random_superfunction(r, d.with_p(0), std::nullopt);
		return expect(der_apply(x, body(f)) == body(der_apply(dx, f)), "X o phi0 != phi0 o d phi0(X)");
	});
	out.emplace_back("text.round_trip", [](RandomSource &r) {
		Dims d{2, 2, 2};
		auto f = random_superfunction(r, d, std::nullopt, RandomShape{2, 4});
		std::string s = print(f);
		if (print(parse_superfunction(s, d)) != s)
			return std::optional<std::string>("print(parse(s)) != s for " + s);
		auto x = random_derivation(r, d, unsigned(r.below(2)));
		std::string t = print(x);
		return expect(print(parse_derivation(t, d)) == t, "field round trip fails");
	});
	return out;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t k)
{
	std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (k + 1);
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
	return z ^ (z >> 31);
}

} // namespace

bool SelftestReport::ok() const
{
	for (auto const &p : properties)
		if (p.failed > 0)
			return false;
	return true;
}

std::string SelftestReport::to_text() const
{
	std::string out;
	unsigned pass = 0, fail = 0;
	for (auto const &p : properties)
	{
		out += p.name + ": " + std::to_string(p.passed) + "/" + std::to_string(p.passed + p.failed) + " passed";
		if (p.failed > 0)
			out += " (first failure: " + p.first_failure + ")";
		out += "\n";
		pass += p.passed;
		fail += p.failed;
	}
	out += "total: " + std::to_string(pass) + " passed, " + std::to_string(fail) + " failed (seed " +
	       std::to_string(seed) + ", count " + std::to_string(count) + ")\n";
	return out;
}

SelftestReport run_selftest(std::uint64_t seed, unsigned count)
{
	SelftestReport report{seed, count, {}};
	auto props = properties();
	for (std::size_t k = 0; k < props.size(); ++k)
	{
		PropertyResult res{props[k].first, 0, 0, {}};
		RandomSource r(mix(seed, k));
		for (unsigned trial = 0; trial < count; ++trial)
		{
			std::optional<std::string> failure;
			try
			{
				failure = props[k].second(r);
			}
			catch (std::exception const &e)
			{
				failure = std::string("exception: ") + e.what();
			}
			if (failure)
			{
				if (res.failed++ == 0)
					res.first_failure = "trial " + std::to_string(trial) + ": " + *failure;
			}
			else
				++res.passed;
		}
		report.properties.push_back(std::move(res));
	}
	return report;
}

} // namespace superdiff
