#include "support.hpp"

#include "superdiff/error.hpp"
#include "superdiff/text.hpp"

#include <gtest/gtest.h>

using namespace superdiff;
using namespace superdiff::testing;

namespace {

ParseDiagnostic diagnose(std::string const &src)
{
	try
	{
		parse_value(src);
	}
	catch (ParseError const &e)
	{
		return e.diagnostic();
	}
	ADD_FAILURE() << "no parse error for " << src;
	return {};
}

} // namespace

TEST(Text, Elements)
{
	auto f = parse_superfunction("t[1]*th[2] + 1/2*x1^2");
	EXPECT_EQ(f.dims(), (Dims{1, 2, 1}));
	std::size_t terms = 0;
	for (auto const &[key, poly] : f.terms())
		terms += poly.terms().size();
	EXPECT_EQ(terms, 2u);
	EXPECT_EQ(f, Rational(1, 2) * sf("x1^2", f.dims()) - Superfunction::monomial(f.dims(), IndexSet{2}, IndexSet{1}));

	auto g = parse_grassmann("3 + 2*t[1] - 1/2*t[1,3]");
	EXPECT_EQ(g.n(), 3u);
	EXPECT_EQ(g.coefficient(IndexSet{}), Rational(3));
	EXPECT_EQ(g.coefficient(IndexSet{1, 3}), Rational(-1, 2));
	EXPECT_EQ(print(g), "3 + 2*t[1] - 1/2*t[1,3]");
	EXPECT_EQ(parse_grassmann("t[]"), unit_embed(1, 0));
	EXPECT_EQ(parse_superfunction("th[]"), Superfunction::constant({}, 1));

	auto x = parse_derivation("x1*d/dx1 - th[1]*d/dth2");
	EXPECT_EQ(x, SuperDerivation::partial_x(x.dims(), 1).left_multiplied(sf("x1", x.dims())) -
	                 SuperDerivation::partial_theta(x.dims(), 2).left_multiplied(sf("th[1]", x.dims())));
	EXPECT_EQ(print(x), "(x1)*d/dx1 + (-th[1])*d/dth2");
	EXPECT_TRUE(parse_derivation("0").is_zero());
	EXPECT_EQ(parse_superfunction("(x1 + th1)^2"), parse_superfunction("x1^2 + 2*x1*th[1]"));
	EXPECT_EQ(parse_superfunction("th1*th2"), -parse_superfunction("th2*th1"));
}

TEST(Text, Morphisms)
{
	auto phi = parse_morphism("x1 -> x1 + t[1]*th[1]; th1 -> th1");
	EXPECT_EQ(phi.dims(), (Dims{1, 1, 1}));
	EXPECT_EQ(phi.images_x()[0], sf("x1 + t[1]*th[1]", phi.dims()));

	auto gm = parse_grassmann_morphism("t[1] -> t[2] + t[3]; t[2] -> -t[1]");
	EXPECT_EQ(gm.source_n(), 2u);
	EXPECT_EQ(gm.target_n(), 3u);
	EXPECT_EQ(gm.images()[1], -GrassmannElement::generator(3, 1));
	EXPECT_EQ(parse_grassmann_morphism(print_grassmann_morphism(gm)), gm);
	EXPECT_EQ(detect_kind("t[1] -> t[2] + t[3]; t[2] -> -t[1]"), DocumentKind::grassmann_morphism);

	auto withinv = parse_morphism("dims: 2 0 0\nx1 -> x1 + x2^2\ninverse: { x1 -> x1 - x2^2 }");
	EXPECT_TRUE(withinv.has_body_inverse());
	EXPECT_THROW(parse_morphism("x1 -> x1 + x2^2\ninverse: { x1 -> x1 + x2^2 }"), InvertibilityError);
	EXPECT_THROW(parse_morphism("x1 -> th[1]"), ParityError);
	EXPECT_THROW(parse_morphism("dims: 1 0 0\nx2 -> x1"), DimensionError);

	EXPECT_EQ(detect_kind("x1 -> x1"), DocumentKind::morphism);
	EXPECT_EQ(detect_kind("p: 1\nphi0: { x1 -> x1 }\nX[1]: (th[1])*d/dx1"), DocumentKind::factored);
	EXPECT_EQ(detect_kind("nil: { x1 -> x1 }\nbody: { x1 -> x1 }"), DocumentKind::split);
	EXPECT_EQ(detect_kind("x1 + th[1]*t[1]"), DocumentKind::expression);
	EXPECT_EQ(infer_dims("x1 -> x1 + t[1]*th[2]"), (Dims{1, 2, 1}));
}

TEST(Text, Diagnostics)
{
	auto d = diagnose("th[2,1]");
	EXPECT_NE(d.message.find("indices must be strictly increasing"), std::string::npos);
	EXPECT_EQ(d.offset, 5u);

	for (std::string bad : {"x1 +", "(x1", "x1 ^ t[1]", "th[1", "3/0", "d/dy1", "x1 $ 2", "x0", "t[0]", "1/", "**"})
	{
		auto diag = diagnose(bad);
		EXPECT_FALSE(diag.message.empty()) << bad;
		EXPECT_LE(diag.offset, bad.size()) << bad;
	}
	EXPECT_THROW(parse_morphism("x1 -> x1; x1 -> x2"), ParseError);
	EXPECT_THROW(parse_morphism("x1 x1"), ParseError);
	EXPECT_THROW(parse_value("d/dx1 * x1"), ParseError);
}

TEST(Text, RoundTripFuzz)
{
	RandomSource r(111);
	for (int i = 0; i < 500; ++i)
	{
		Dims d{unsigned(r.below(3)), unsigned(r.below(4)), unsigned(r.below(4))};
		switch (i % 5)
		{
		case 0: {
			auto s = print(random_superfunction(r, d, std::nullopt, RandomShape{3, 4}));
			EXPECT_EQ(print(parse_superfunction(s)), s);
			break;
		}
		case 1: {
			if (d.m + d.n == 0)
				d.n = 1;
			auto s = print(random_derivation(r, d, unsigned(r.below(2))));
			EXPECT_EQ(print(parse_derivation(s)), s);
			break;
		}
		case 2: {
			auto s = print(random_grassmann(r, d.p, std::nullopt, 4));
			EXPECT_EQ(print(parse_grassmann(s)), s);
			break;
		}
		case 3: {
			Dims e{1 + unsigned(r.below(2)), unsigned(r.below(3)), unsigned(r.below(3))};
			auto s = print_morphism(random_point(r, e, r.coin(), RandomShape{1, 2}));
			EXPECT_EQ(print_morphism(parse_morphism(s)), s);
			break;
		}
		default: {
			Dims e{1 + unsigned(r.below(2)), unsigned(r.below(3)), 1 + unsigned(r.below(2))};
			auto form = random_factored(r, e, false, RandomShape{1, 2});
			auto s = print_factored(form);
			EXPECT_EQ(print_factored(parse_factored(s)), s);
			auto sp = print_split(split(expand_factored(form)));
			EXPECT_EQ(print_split(parse_split(sp)), sp);
			break;
		}
		}
	}
}

TEST(Text, DimsRespectAtLeast)
{
	auto f = parse_superfunction("x1", {3, 2, 1});
	EXPECT_EQ(f.dims(), (Dims{3, 2, 1}));
	auto phi = parse_morphism("x1 -> x1", {2, 1, 2});
	EXPECT_EQ(phi.dims(), (Dims{2, 1, 2}));
	EXPECT_TRUE(phi.underlying().is_identity());
}
