#include "oracles.hpp"
#include "support.hpp"

#include "superdiff/error.hpp"
#include "superdiff/sdiff.hpp"

#include <gtest/gtest.h>

using namespace superdiff;
using namespace superdiff::testing;

namespace {

bool in_kernel(SuperMorphism const &phi)
{
	return gr_push(GrassmannMorphism::terminal(phi.dims().p), phi).underlying().is_identity();
}

} // namespace

TEST(Group, Unit)
{
	RandomSource r(81);
	for (int i = 0; i < 20; ++i)
	{
		Dims d{2, 2, unsigned(r.below(4))};
		auto phi = random_point(r, d, r.coin());
		auto id = SuperMorphism::identity(d);
		EXPECT_EQ(compose(phi, id), phi);
		EXPECT_EQ(compose(id, phi), phi);
	}
}

TEST(Group, Associative)
{
	RandomSource r(82);
	RandomShape s{1, 2};
	for (int i = 0; i < 20; ++i)
	{
		Dims d{2, 2, 2};
		auto a = random_point(r, d, false, s), b = random_point(r, d, false, s), c = random_point(r, d, false, s);
		EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
	}
}

TEST(Group, Inverse)
{
	RandomSource r(83);
	for (int i = 0; i < 20; ++i)
	{
		Dims d{2, 2, 3};
		auto phi = random_point(r, d, r.coin());
		auto inv = invert(phi);
		auto id = SuperMorphism::identity(d);
		EXPECT_EQ(compose(phi, inv), id);
		EXPECT_EQ(compose(inv, phi), id);
		// the inverse factors over the inverse body
		EXPECT_EQ(factorize(oracle::bare(inv)).body, phi.underlying().inverse());
	}
	auto id = SuperMorphism::identity({1, 2, 2});
	EXPECT_EQ(invert(id), id);
	auto b = parse_morphism("x1 -> 2*x1 + 3\nth1 -> th[1] + th[2]\nth2 -> th[2]").underlying();
	auto cb = certify_inverse(b).certified;
	ASSERT_TRUE(cb.has_value());
	EXPECT_EQ(invert(SuperMorphism::constant_family(*cb, 2)), SuperMorphism::constant_family(cb->inverse(), 2));
}

TEST(Group, ComposeConstantFamilies)
{
	RandomSource r(84);
	for (int i = 0; i < 20; ++i)
	{
		auto a = random_body(r, 2, 2, r.coin()), b = random_body(r, 2, 2, r.coin());
		EXPECT_EQ(compose(SuperMorphism::constant_family(a, 2), SuperMorphism::constant_family(b, 2)),
		          SuperMorphism::constant_family(compose(a, b), 2));
	}
}

TEST(Group, ComposeOracle)
{
	RandomSource r(85);
	for (int i = 0; i < 30; ++i)
	{
		Dims d{2, 2, unsigned(r.below(3)) + 1};
		auto a = random_point(r, d, r.coin()), b = random_point(r, d, r.coin());
		EXPECT_EQ(compose(a, b), compose_via_factored(a, b));
	}
}

TEST(Group, Mismatch)
{
	EXPECT_THROW(compose(SuperMorphism::identity({1, 1, 1}), SuperMorphism::identity({1, 1, 2})), DimensionError);
	// different superdomains are lifted
	EXPECT_EQ(compose(SuperMorphism::identity({1, 1, 1}), SuperMorphism::identity({2, 1, 1})),
	          SuperMorphism::identity({2, 1, 1}));
}

TEST(Invertibility, Verdicts)
{
	EXPECT_TRUE(is_invertible(SuperMorphism::identity({2, 2, 1})));
	auto affine = parse_morphism("x1 -> 2*x1 + 3 + t[1]*th[1]");
	auto v = is_invertible(affine);
	ASSERT_TRUE(v);
	EXPECT_EQ(v.certified->inverse(), parse_morphism("dims: 1 1 0\nx1 -> 1/2*x1 - 3/2").underlying());
	auto sq = parse_morphism("x1 -> x1^2");
	EXPECT_EQ(is_invertible(sq).status, Invertibility::unknown);
	EXPECT_THROW(certified(sq), InvertibilityError);
	EXPECT_THROW(invert(sq), InvertibilityError);
	// a supplied inverse certifies a non-affine body
	auto cubic = parse_morphism("x1 -> x1 + x2^2\nx2 -> x2\ninverse: { x1 -> x1 - x2^2; x2 -> x2 }");
	EXPECT_TRUE(is_invertible(cubic));
	EXPECT_EQ(compose(cubic, invert(cubic)), SuperMorphism::identity(cubic.dims()));
}

TEST(Split, Examples)
{
	RandomSource r(86);
	auto b = random_body(r, 2, 2, true);
	auto cf = SuperMorphism::constant_family(b, 2);
	auto s = split(cf);
	EXPECT_EQ(s.nil, SuperMorphism::identity({2, 2, 2}));
	EXPECT_EQ(s.body, b);

	auto nil = expand_factored(UnderlyingMorphism::identity(2, 2),
	                           {{IndexSet{1}, random_derivation(r, {2, 2, 0}, 1)}}, 2);
	auto sn = split(nil);
	EXPECT_TRUE(sn.body.is_identity());
	EXPECT_EQ(sn.nil, nil);

	for (int i = 0; i < 20; ++i)
	{
		auto phi = random_point(r, {2, 2, 2}, r.coin());
		auto sp = split(phi);
		EXPECT_TRUE(in_kernel(sp.nil));
		EXPECT_EQ(recombine(sp), phi);
	}
	EXPECT_THROW(recombine({cf, b}), MalformedMorphismError);
}

TEST(Split, SemidirectLaw)
{
	RandomSource r(87);
	for (int i = 0; i < 20; ++i)
	{
		Dims d{2, 2, 2};
		auto phi = random_point(r, d, r.coin()), psi = random_point(r, d, r.coin());
		auto s1 = split(phi), s2 = split(psi), s12 = split(compose(phi, psi));
		EXPECT_EQ(s12.nil, compose(s1.nil, conjugate(s1.body, s2.nil)));
		EXPECT_EQ(s12.body, compose(s1.body, s2.body));
	}
}

TEST(Kernel, ClosedAndNormal)
{
	RandomSource r(88);
	for (int i = 0; i < 20; ++i)
	{
		Dims d{2, 2, 2};
		auto n1 = split(random_point(r, d)).nil, n2 = split(random_point(r, d)).nil;
		EXPECT_TRUE(in_kernel(compose(n1, n2)));
		EXPECT_TRUE(in_kernel(invert(n1)));
		EXPECT_TRUE(in_kernel(conjugate(random_body(r, 2, 2, r.coin()), n1)));
	}
}

TEST(Functor, Homomorphism)
{
	RandomSource r(89);
	RandomShape s{1, 2};
	for (int i = 0; i < 20; ++i)
	{
		auto mor = random_grassmann_morphism(r, 3, 2);
		auto phi = random_point(r, {2, 2, 3}, false, s), psi = random_point(r, {2, 2, 3}, false, s);
		EXPECT_EQ(functor_map(mor, compose(phi, psi)), compose(functor_map(mor, phi), functor_map(mor, psi)));
		EXPECT_EQ(functor_map(mor, SuperMorphism::identity({2, 2, 3})), SuperMorphism::identity({2, 2, 2}));
		EXPECT_EQ(functor_map(mor, invert(phi)), invert(functor_map(mor, phi)));
		EXPECT_TRUE(is_invertible(functor_map(mor, phi)));
		EXPECT_EQ(functor_map(GrassmannMorphism::terminal(3), phi),
		          SuperMorphism::constant_family(phi.underlying(), 0));
	}
}

TEST(Differential, Examples)
{
	RandomSource r(90);
	for (int i = 0; i < 20; ++i)
	{
		Dims d{2, 2, 2};
		auto y = random_derivation(r, d, unsigned(r.below(2)));
		EXPECT_EQ(differential_action(SuperMorphism::identity(d), y), y);
		auto b = random_body(r, 2, 2, r.coin());
		EXPECT_EQ(differential_action(SuperMorphism::constant_family(b, 2), y), pushforward(b, y));
	}
}

TEST(Differential, EvenLinear)
{
	RandomSource r(91);
	for (int i = 0; i < 30; ++i)
	{
		Dims d{2, 2, 3};
		auto phi = random_point(r, d, r.coin(), RandomShape{1, 2});
		auto y = random_derivation(r, d, unsigned(r.below(2)), RandomShape{1, 2});
		auto z = random_derivation(r, d, unsigned(r.below(2)), RandomShape{1, 2});
		auto lambda = Superfunction::from_grassmann(d, random_grassmann(r, 3, 0u));
		EXPECT_EQ(differential_action(phi, y.left_multiplied(lambda)),
		          differential_action(phi, y).left_multiplied(lambda));
		EXPECT_EQ(differential_action(phi, y + z), differential_action(phi, y) + differential_action(phi, z));
	}
}

TEST(Differential, Commutator)
{
	Dims d{1, 2, 1};
	auto dd = field("t[1]*th[1]*d/dx1", d);
	auto z = field("x1*d/dx1 + d/dth1", d);
	// computed on generators, checked on products
	for (auto g : {sf("x1^2*th[1,2]", d), sf("x1*th[2] + t[1]*x1^2", d), sf("th[1,2]*t[1]", d)})
		EXPECT_EQ(der_apply(commutator(dd, z), g), der_apply(dd, der_apply(z, g)) - der_apply(z, der_apply(dd, g)));
}
