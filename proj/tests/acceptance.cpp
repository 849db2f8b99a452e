// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include "cli.hpp"
#include "oracles.hpp"

#include "superdiff/error.hpp"
#include "superdiff/random.hpp"
#include "superdiff/sections.hpp"
#include "superdiff/text.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace superdiff;

namespace {

struct Outcome
{
	bool ok = true;
	std::string note;

	void require(bool cond, std::string const &what)
	{
		if (!cond && ok)
		{
			ok = false;
			note = what;
		}
	}
};

struct Criterion
{
	int id;
	char const *title;
	double limit_s; // 0: no limit
	std::function<Outcome()> check;
};

Outcome partitions()
{
	Outcome o;
	using S = OrderedIndexSet;
	std::vector<std::pair<S, S>> splits{{{}, {1, 2}}, {{1}, {2}}, {{2}, {1}}, {{1, 2}, {}}};
	o.require(ordered_splits({1, 2}) == splits, "ordered splits of {1,2}");
	auto parts = unordered_partitions(S{1, 2});
	o.require(parts.size() == 2 && parts[0].blocks == std::vector<S>{{1, 2}} &&
	              parts[1].blocks == std::vector<S>{{1}, {2}},
	          "unordered partitions of {1,2}");
	unsigned long long const bell[] = {1, 1, 2, 5, 15, 52};
	S idx;
	for (unsigned k = 1; k <= 5; ++k)
	{
		idx.push_back(k);
		o.require(ordered_splits(idx).size() == (1ull << k), "2^k ordered splits, k=" + std::to_string(k));
		o.require(unordered_partitions(idx).size() == bell[k], "Bell count, k=" + std::to_string(k));
	}
	return o;
}

Outcome symmetrized_leibniz()
{
	Outcome o;
	RandomSource r(2001);
	Dims d{2, 2, 4};
	Dims plain = d.with_p(0);
	RandomShape shape{2, 2};
	for (unsigned k = 2; k <= 4; ++k)
		for (int trial = 0; trial < 100; ++trial)
		{
			std::vector<PrefixedOperator> ops;
			for (unsigned i = 1; i <= k; ++i)
			{
				// random external prefix of size 0..2 among t1..t4, field parity matched to keep it even
				IndexSet prefix;
				unsigned len = unsigned(r.below(3));
				while (prefix.size() < len)
					prefix = prefix.with(1 + unsigned(r.below(d.p)));
				ops.push_back({prefix, random_derivation(r, plain, prefix.parity(), shape).lifted(d)});
			}
			auto f = random_superfunction(r, plain, unsigned(r.below(2)), shape).lifted(d);
			auto g = random_superfunction(r, plain, unsigned(r.below(2)), shape).lifted(d);
			auto lhs = symmetrize_apply(ops, f * g);
			o.require(lhs == oracle::brute_symmetrized_product(ops, f, g), "S(a)(fg) vs brute-force expansion");
			o.require(lhs == oracle::split_leibniz(ops, f, g), "S(a)(fg) vs sum over K+L");
		}
	return o;
}

Outcome factor_round_trip(std::string &extra)
{
	Outcome o;
	RandomSource r(2002);
	for (int trial = 0; trial < 100; ++trial)
	{
		Dims d{2, 2, unsigned(trial % 4)};
		auto form = random_factored(r, d);
		auto phi = oracle::bare(expand_factored(form));
		o.require(factorize(phi) == form, "factorize(expand(F)) != F");
		o.require(oracle::bare(expand_factored(factorize(phi))) == phi, "expand(factorize(phi)) != phi");
		// a point built without the factored form at hand
		auto psi = oracle::bare(random_point(r, d));
		o.require(oracle::bare(expand_factored(factorize(psi))) == psi, "expand(factorize(psi)) != psi");
		o.require(oracle::log_fields(psi, factorize(psi).body) == factorize(psi).fields, "fields vs logarithm");
	}
	// Lambda_2: the quadratic term of the exponential carries the 1/2
	unsigned literal_mismatch = 0, cases = 0;
	for (int trial = 0; trial < 100; ++trial)
	{
		Dims d{2, 2, 2};
		auto form = random_factored(r, d);
		auto phi = expand_factored(form);
		for (unsigned k = 1; k <= 2; ++k)
		{
			auto g = form.body(Superfunction::x(d.with_p(0), k));
			o.require(phi.images_x()[k - 1] == oracle::lambda2_closed_form(form, g), "Lambda_2 closed form");
			++cases;
			if (!(phi.images_x()[k - 1] == oracle::lambda2_half_display(form, g)))
				++literal_mismatch;
		}
	}
	extra = "Lambda_2 closed form 1 + t1X1 + t2X2 + t1t2X12 + 1/2(t1X1 t2X2 + t2X2 t1X1) holds; "
	        "the variant with 1/2 t1t2X12 and no cross term differs in " +
	        std::to_string(literal_mismatch) + "/" + std::to_string(cases) + " cases";
	return o;
}

Outcome inversion()
{
	Outcome o;
	RandomSource r(2003);
	for (int i = 0; i < 100; ++i)
	{
		Dims d{2, 2, 3};
		auto phi = random_point(r, d, r.coin());
		auto inv = invert(phi);
		auto id = SuperMorphism::identity(d);
		o.require(compose(phi, inv) == id, "phi phi^-1 != 1");
		o.require(compose(inv, phi) == id, "phi^-1 phi != 1");
	}
	return o;
}

Outcome associativity()
{
	Outcome o;
	RandomSource r(2004);
	for (int i = 0; i < 50; ++i)
	{
		Dims d{2, 2, 2};
		auto a = random_point(r, d), b = random_point(r, d), c = random_point(r, d);
		o.require(compose(compose(a, b), c) == compose(a, compose(b, c)), "(ab)c != a(bc)");
	}
	return o;
}

Outcome functoriality()
{
	Outcome o;
	RandomSource r(2005);
	for (int i = 0; i < 50; ++i)
	{
		auto mor = random_grassmann_morphism(r, 3, 2);
		auto phi = random_point(r, {2, 2, 3}), psi = random_point(r, {2, 2, 3});
		o.require(functor_map(mor, compose(phi, psi)) == compose(functor_map(mor, phi), functor_map(mor, psi)),
		          "F(phi psi) != F(phi) F(psi)");
		o.require(functor_map(mor, SuperMorphism::identity({2, 2, 3})) == SuperMorphism::identity({2, 2, 2}),
		          "F(1) != 1");
		auto m2 = random_grassmann_morphism(r, 2, 1);
		o.require(functor_map(gr_compose(m2, mor), phi) == functor_map(m2, functor_map(mor, phi)),
		          "F(m2 m1) != F(m2) F(m1)");
	}
	return o;
}

Outcome semidirect()
{
	Outcome o;
	RandomSource r(2006);
	for (int i = 0; i < 50; ++i)
	{
		Dims d{2, 2, 2};
		auto phi = random_point(r, d, r.coin()), psi = random_point(r, d, r.coin());
		auto s1 = split(phi), s2 = split(psi), s12 = split(compose(phi, psi));
		o.require(recombine(s1) == phi && recombine(s2) == psi, "recombine(split(phi)) != phi");
		o.require(s1.nil.underlying().is_identity(), "nil part has a nontrivial body");
		o.require(s12.nil == compose(s1.nil, conjugate(s1.body, s2.nil)), "nil part of the product");
		o.require(s12.body == compose(s1.body, s2.body), "body of the product");
	}
	return o;
}

Outcome exp_log()
{
	Outcome o;
	RandomSource r(2007);
	for (int i = 0; i < 50; ++i)
	{
		auto x = random_filtered_field(r, 2, 3, 2);
		o.require(log_unipotent(exp_nilpotent(x)) == x, "log(exp X) != X");
		auto u = random_unipotent(r, 2, 3);
		o.require(exp_nilpotent(log_unipotent(u)) == u, "exp(log u) != u");
	}
	return o;
}

Outcome compose_oracle()
{
	Outcome o;
	RandomSource r(2008);
	for (int i = 0; i < 50; ++i)
	{
		Dims d{2, 2, 2};
		auto a = random_point(r, d), b = random_point(r, d);
		o.require(compose(a, b) == compose_via_factored(a, b), "substitution vs factored product");
	}
	return o;
}

Outcome section_counts()
{
	Outcome o;
	for (unsigned m = 0; m <= 2; ++m)
		for (unsigned n = 0; n <= 2; ++n)
			for (unsigned p = 0; p <= 3; ++p)
				for (unsigned d = 0; d <= 2; ++d)
				{
					auto basis = section_basis(m, n, p, d);
					std::string where = "(m,n,p,d)=(" + std::to_string(m) + "," + std::to_string(n) + "," +
					                    std::to_string(p) + "," + std::to_string(d) + ")";
					o.require(basis.size() == section_count_formula(m, n, p, d), "count at " + where);
					for (auto const &s : basis)
						o.require(s.field().parity() == 0u, "odd basis element at " + where);
				}
	return o;
}

Outcome differential()
{
	Outcome o;
	RandomSource r(2009);
	RandomShape s{1, 2};
	for (int i = 0; i < 100; ++i)
	{
		Dims d{2, 2, 2};
		auto phi = random_point(r, d, r.coin(), s);
		auto y = random_derivation(r, d, unsigned(r.below(2)), s);
		auto lambda = Superfunction::from_grassmann(d, random_grassmann(r, 2, 0u));
		o.require(differential_action(phi, y.left_multiplied(lambda)) ==
		              differential_action(phi, y).left_multiplied(lambda),
		          "differential action is not even-linear");
		auto body = phi.underlying();
		auto x = random_derivation(r, d.with_p(0), unsigned(r.below(2)), s);
		auto f = random_superfunction(r, d.with_p(0), std::nullopt);
		o.require(der_apply(x, body(f)) == body(der_apply(pushforward(body, x), f)), "X phi0 != phi0 dphi0(X)");
	}
	return o;
}

int run_cli(std::vector<std::string> args, std::string const &in, std::string &out)
{
	std::istringstream is(in);
	std::ostringstream os, es;
	int code = cli::run(args, is, os, es);
	out = os.str();
	return code;
}

Outcome cli_checks()
{
	Outcome o;
	RandomSource r(2010);
	for (int i = 0; i < 500; ++i)
	{
		Dims d{1 + unsigned(r.below(2)), unsigned(r.below(3)), unsigned(r.below(3))};
		std::string s;
		switch (i % 4)
		{
		case 0:
			s = print(random_superfunction(r, d, std::nullopt, RandomShape{3, 4}));
			o.require(print(parse_superfunction(s)) == s, "superfunction round trip: " + s);
			break;
		case 1:
			s = print(random_derivation(r, d, unsigned(r.below(2))));
			o.require(print(parse_derivation(s)) == s, "field round trip: " + s);
			break;
		case 2:
			s = print_morphism(random_point(r, d, r.coin(), RandomShape{1, 2}));
			o.require(print_morphism(parse_morphism(s)) == s, "morphism round trip");
			break;
		default:
			d.p = std::max(d.p, 1u);
			s = print_factored(random_factored(r, d, false, RandomShape{1, 2}));
			o.require(print_factored(parse_factored(s)) == s, "factored round trip");
			break;
		}
	}
	// factorize | expand through the command front end
	for (int i = 0; i < 10; ++i)
	{
		auto text = print_morphism(oracle::bare(random_point(r, {2, 2, 2}, r.coin())));
		std::string canon, fac, back;
		o.require(run_cli({"compose", "-"}, text, canon) == 0, "compose failed");
		o.require(run_cli({"factorize", "-"}, text, fac) == 0, "factorize failed");
		o.require(run_cli({"expand", "-"}, fac, back) == 0, "expand failed");
		o.require(back == canon, "factorize|expand is not byte-identical");
	}
	std::string a, b;
	o.require(run_cli({"selftest", "--seed", "42", "--count", "20"}, "", a) == 0, "selftest failed");
	run_cli({"selftest", "--seed", "42", "--count", "20"}, "", b);
	o.require(a == b, "selftest output differs between runs");
	return o;
}

} // namespace

int main()
{
	std::string lambda2_note;
	std::vector<Criterion> criteria{
	    {1, "partition counts", 1, partitions},
	    {2, "symmetrized Leibniz identity", 30, symmetrized_leibniz},
	    {3, "factor/expand round trip", 60, [&] { return factor_round_trip(lambda2_note); }},
	    {4, "inversion on Lambda_3 points", 60, inversion},
	    {5, "associativity on Lambda_2", 60, associativity},
	    {6, "functoriality", 0, functoriality},
	    {7, "semidirect law", 0, semidirect},
	    {8, "exp/log bijection", 0, exp_log},
	    {9, "composition oracle agreement", 0, compose_oracle},
	    {10, "section basis counts", 0, section_counts},
	    {11, "differential action", 0, differential},
	    {12, "command line round trips", 0, cli_checks},
	};
	int failed = 0;
	for (auto const &c : criteria)
	{
		auto t0 = std::chrono::steady_clock::now();
		Outcome o;
		try
		{
			o = c.check();
		}
		catch (std::exception const &e)
		{
			o.ok = false;
			o.note = std::string("exception: ") + e.what();
		}
		double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
		if (o.ok && c.limit_s > 0 && secs > c.limit_s)
		{
			o.ok = false;
			o.note = "time limit " + std::to_string(c.limit_s) + " s exceeded";
		}
		std::printf("%s %2d %-32s %8.3f s%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
		            o.note.empty() ? "" : "  ", o.note.c_str());
		if (c.id == 3 && !lambda2_note.empty())
			std::printf("        %s\n", lambda2_note.c_str());
		failed += o.ok ? 0 : 1;
	}
	std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
	return failed == 0 ? 0 : 1;
}
