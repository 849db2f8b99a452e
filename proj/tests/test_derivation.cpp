#include "oracles.hpp"
#include "support.hpp"

#include "superdiff/derivation.hpp"
#include "superdiff/error.hpp"
#include "superdiff/partitions.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <optional>

using namespace superdiff;
using namespace superdiff::testing;

TEST(Derivation, Action)
{
	Dims d{3, 3, 0};
	EXPECT_EQ(der_apply(field("d/dth2", d), sf("th[1,2]", d)), sf("-th[1]", d));
	EXPECT_EQ(der_apply(field("x1*d/dx1", d), sf("x1^2*th[3]", d)), sf("2*x1^2*th[3]", d));
	EXPECT_EQ(der_apply(field("d/dth1", d), sf("th[1,2]", d)), sf("th[2]", d));
	// value on a generator is the coefficient
	auto x = field("(x2*th[1])*d/dx1 + (th[1,3])*d/dth2", d);
	EXPECT_EQ(der_apply(x, sf("x1", d)), sf("x2*th[1]", d));
	EXPECT_EQ(der_apply(x, sf("th[2]", d)), sf("th[1,3]", d));
}

TEST(Derivation, Parity)
{
	Dims d{1, 2, 0};
	EXPECT_EQ(field("th[1]*d/dx1", d).parity(), std::optional<unsigned>(1));
	EXPECT_EQ(field("th[1]*d/dth2", d).parity(), std::optional<unsigned>(0));
	EXPECT_EQ(field("d/dx1 + d/dth1", d).parity(), std::nullopt);
}

TEST(Derivation, Bracket)
{
	Dims d{1, 1, 0};
	EXPECT_EQ(bracket(field("d/dth1", d), field("th[1]*d/dx1", d)), field("d/dx1", d));
	auto x = field("th[1]*d/dx1", d);
	EXPECT_TRUE(bracket(x, x).is_zero());
	EXPECT_THROW(bracket(field("d/dx1 + d/dth1", d), x), ParityError);
}

TEST(Derivation, LeibnizAndAntisymmetry)
{
	RandomSource r(31);
	Dims d{2, 2, 1};
	for (int i = 0; i < 200; ++i)
	{
		unsigned px = unsigned(r.below(2)), py = unsigned(r.below(2)), pf = unsigned(r.below(2));
		auto x = random_derivation(r, d, px), y = random_derivation(r, d, py);
		auto f = random_superfunction(r, d, pf), g = random_superfunction(r, d, std::nullopt);
		EXPECT_EQ(der_apply(x, f * g), der_apply(x, f) * g + Rational(koszul(px, pf)) * (f * der_apply(x, g)));
		EXPECT_TRUE((bracket(x, y) + Rational(koszul(px, py)) * bracket(y, x)).is_zero());
	}
}

TEST(Derivation, Jacobi)
{
	RandomSource r(32);
	Dims d{1, 2, 0};
	for (int i = 0; i < 50; ++i)
	{
		unsigned px = unsigned(r.below(2)), py = unsigned(r.below(2)), pz = unsigned(r.below(2));
		RandomShape s{1, 2};
		auto x = random_derivation(r, d, px, s), y = random_derivation(r, d, py, s), z = random_derivation(r, d, pz, s);
		// cyclic form with the (-1)^{|X||Z|} weights
		auto sum = Rational(koszul(px, pz)) * bracket(x, bracket(y, z)) +
		           Rational(koszul(py, px)) * bracket(y, bracket(z, x)) +
		           Rational(koszul(pz, py)) * bracket(z, bracket(x, y));
		EXPECT_TRUE(sum.is_zero());
	}
}

TEST(Derivation, Filtration)
{
	Dims d{1, 2, 0};
	EXPECT_EQ(filtration_degree(field("th[1,2]*d/dx1", d)), 2);
	EXPECT_EQ(filtration_degree(field("th[1]*d/dth2", d)), 0);
	EXPECT_EQ(filtration_degree(field("x1*d/dx1", d)), 0);
	EXPECT_EQ(filtration_degree(field("d/dth1", d)), -1);
	EXPECT_EQ(filtration_degree(SuperDerivation(d)), kInfiniteDegree);
}

TEST(Derivation, FiltrationRaisesJDegree)
{
	RandomSource r(33);
	for (int i = 0; i < 100; ++i)
	{
		auto x = random_filtered_field(r, 2, 3, int(r.below(3)));
		if (x.is_zero())
			continue;
		auto f = random_superfunction(r, x.dims(), std::nullopt);
		auto v = der_apply(x, f);
		if (!v.is_zero())
			EXPECT_GE(j_degree(v), j_degree(f) + filtration_degree(x));
	}
}

TEST(Partitions, TwoElementLists)
{
	using S = OrderedIndexSet;
	auto splits = ordered_splits({1, 2});
	std::vector<std::pair<S, S>> expected{{{}, {1, 2}}, {{1}, {2}}, {{2}, {1}}, {{1, 2}, {}}};
	EXPECT_EQ(splits, expected);
	auto parts = unordered_partitions(S{1, 2});
	ASSERT_EQ(parts.size(), 2u);
	EXPECT_EQ(parts[0].blocks, (std::vector<S>{{1, 2}}));
	EXPECT_EQ(parts[1].blocks, (std::vector<S>{{1}, {2}}));
	EXPECT_EQ(ordered_splits({}).size(), 1u);
	EXPECT_EQ(unordered_partitions(S{1}).size(), 1u);
	EXPECT_THROW(unordered_partitions(S{}), DomainError);
}

TEST(Partitions, Counts)
{
	for (unsigned k = 1; k <= 6; ++k)
	{
		OrderedIndexSet idx;
		for (unsigned i = 1; i <= k; ++i)
			idx.push_back(i);
		EXPECT_EQ(ordered_splits(idx).size(), std::size_t(1) << k);
		auto parts = unordered_partitions(idx);
		EXPECT_EQ(parts.size(), bell_number(k));
		// blocks are disjoint, cover I and keep the induced order
		for (auto const &p : parts)
		{
			OrderedIndexSet all;
			for (auto const &b : p.blocks)
			{
				EXPECT_FALSE(b.empty());
				EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
				all.insert(all.end(), b.begin(), b.end());
			}
			std::sort(all.begin(), all.end());
			EXPECT_EQ(all, idx);
		}
	}
	EXPECT_EQ(bell_number(3), 5u);
	EXPECT_EQ(bell_number(5), 52u);
}

TEST(Symmetrize, LeibnizIdentity)
{
	// S(a_1...a_k)(fg) = sum over K+L of S(a_K)(f) S(a_L)(g), for even prefixed operators
	RandomSource r(41);
	Dims d{2, 2, 4};
	Dims plain = d.with_p(0);
	for (int trial = 0; trial < 30; ++trial)
	{
		unsigned k = 2 + unsigned(r.below(3));
		std::vector<PrefixedOperator> ops;
		unsigned next_tau = 1;
		for (unsigned i = 0; i < k; ++i)
		{
			// prefix t_i with a field of the same parity, so each operator is even
			IndexSet prefix = IndexSet::single(next_tau++);
			ops.push_back({prefix, random_derivation(r, plain, prefix.parity(), RandomShape{1, 2}).lifted(d)});
		}
		unsigned pf = unsigned(r.below(2));
		auto f = random_superfunction(r, plain, pf).lifted(d);
		auto g = random_superfunction(r, plain, std::nullopt).lifted(d);
		Superfunction lhs = symmetrize_apply(ops, f * g);
		Superfunction rhs(d);
		OrderedIndexSet idx;
		for (unsigned i = 0; i < k; ++i)
			idx.push_back(i);
		for (auto const &[kk, ll] : ordered_splits(idx))
		{
			std::vector<PrefixedOperator> a, b;
			for (auto i : kk)
				a.push_back(ops[i]);
			for (auto i : ll)
				b.push_back(ops[i]);
			rhs += symmetrize_apply(a, f) * symmetrize_apply(b, g);
		}
		EXPECT_EQ(lhs, rhs);
		EXPECT_EQ(lhs, oracle::brute_symmetrized_product(ops, f, g));
	}
}

TEST(Symmetrize, Multiplicity)
{
	// expanding the k! orderings of a_1 a_2 a_3 acting on fg by Leibniz, each
	// ordered pair (K, L) of complementary subsets occurs k! / (|K|! |L|!) times
	// up to the ordering inside K and L, i.e. |K|! |L|! C(k, |K|) ordered words.
	unsigned const k = 3;
	std::vector<unsigned> order{0, 1, 2};
	std::map<std::pair<std::vector<unsigned>, std::vector<unsigned>>, unsigned> words;
	do
	{
		// each operator goes left or right
		for (unsigned mask = 0; mask < (1u << k); ++mask)
		{
			std::vector<unsigned> left, right;
			for (unsigned pos = 0; pos < k; ++pos)
				((mask >> pos) & 1u ? left : right).push_back(order[pos]);
			++words[{left, right}];
		}
	} while (std::next_permutation(order.begin(), order.end()));
	std::map<std::pair<unsigned, unsigned>, unsigned> by_split; // (mask of K) -> total
	for (auto const &[w, c] : words)
	{
		unsigned kmask = 0;
		for (auto i : w.first)
			kmask |= 1u << i;
		by_split[{kmask, unsigned(w.first.size())}] += c;
		// each ordered word appears (number of interleavings) = C(k, |K|) times
		unsigned binom = w.first.size() == 0 || w.first.size() == k ? 1 : 3;
		EXPECT_EQ(c, binom);
	}
	for (auto const &[key, total] : by_split)
	{
		unsigned kk = key.second;
		unsigned fk = kk == 3 ? 6 : (kk == 2 ? 2 : 1), fl = (3 - kk) == 3 ? 6 : ((3 - kk) == 2 ? 2 : 1);
		// (|K|+|L|)!/(|K|!|L|!) per ordered pair of words, times |K|!|L|! words
		EXPECT_EQ(total, 6u / (fk * fl) * fk * fl);
	}
}

TEST(Symmetrize, SingleAndEmpty)
{
	Dims d{1, 1, 1};
	auto x = field("th[1]*d/dx1", d.with_p(0)).lifted(d);
	auto f = sf("x1^2", d);
	EXPECT_EQ(symmetrize_apply({{IndexSet{1}, x}}, f), apply_prefixed({IndexSet{1}, x}, f));
	EXPECT_EQ(symmetrize_apply({}, f), f);
}

TEST(Pushforward, Examples)
{
	Dims d{1, 1, 0};
	auto body = UnderlyingMorphism(1, 1, {sf("2*x1", d)}, {sf("th[1]", d)});
	auto cert = body.with_inverse(UnderlyingMorphism(1, 1, {sf("1/2*x1", d)}, {sf("th[1]", d)}));
	EXPECT_EQ(pushforward(cert, field("d/dx1", d)), field("2*d/dx1", d));
	auto x = field("(x1*th[1])*d/dx1 + d/dth1", d);
	EXPECT_EQ(pushforward(UnderlyingMorphism::identity(1, 1), x), x);
	EXPECT_THROW(pushforward(body, x), InvertibilityError);
}

TEST(Pushforward, DefiningIdentity)
{
	RandomSource r(51);
	for (int i = 0; i < 100; ++i)
	{
		auto body = random_body(r, 2, 2, r.coin());
		Dims d = body.dims();
		auto x = random_derivation(r, d, unsigned(r.below(2)));
		auto y = pushforward(body, x);
		auto f = random_superfunction(r, d, std::nullopt);
		EXPECT_EQ(der_apply(x, body(f)), body(der_apply(y, f)));
		int fx = filtration_degree(x);
		if (fx >= 0 && fx != kInfiniteDegree)
			EXPECT_GE(filtration_degree(y), fx);
	}
}

TEST(Exp, Examples)
{
	Dims d{1, 2, 0};
	EXPECT_TRUE(exp_nilpotent(SuperDerivation(d)).is_identity());
	auto x = field("th[1,2]*d/dx1", d);
	auto phi = exp_nilpotent(x);
	EXPECT_EQ(phi.images_x()[0], sf("x1 + th[1,2]", d));
	EXPECT_EQ(phi.images_th()[0], sf("th[1]", d));
	EXPECT_EQ(log_unipotent(phi), x);
	EXPECT_TRUE(log_unipotent(UnderlyingMorphism::identity(1, 2)).is_zero());
	EXPECT_THROW(exp_nilpotent(field("th[1]*d/dth2", d)), DomainError);
	EXPECT_THROW(exp_nilpotent(field("th[1]*d/dx1", d)), DomainError);
	UnderlyingMorphism not_unipotent(1, 2, {sf("2*x1", d)}, {sf("th[1]", d), sf("th[2]", d)});
	EXPECT_THROW(log_unipotent(not_unipotent), DomainError);
}

TEST(Exp, RoundTrips)
{
	RandomSource r(61);
	for (int i = 0; i < 50; ++i)
	{
		auto x = random_filtered_field(r, 2, 3, 2);
		auto phi = exp_nilpotent(x);
		EXPECT_TRUE(compose(phi, phi.inverse()).is_identity());
		EXPECT_TRUE(is_identity_mod_j(phi, 2));
		EXPECT_EQ(log_unipotent(phi), x);
		auto u = random_unipotent(r, 2, 3);
		EXPECT_EQ(exp_nilpotent(log_unipotent(u)), u);
	}
}

TEST(Exp, NilpotencyBound)
{
	// X^{n/2+1} = 0 for filtration >= 2
	RandomSource r(62);
	for (int i = 0; i < 50; ++i)
	{
		auto x = random_filtered_field(r, 2, 4, 2);
		auto f = random_superfunction(r, x.dims(), std::nullopt);
		for (int k = 0; k < 3; ++k)
			f = der_apply(x, f);
		EXPECT_TRUE(f.is_zero());
	}
}

TEST(Exp, SeriesMustTerminate)
{
	Dims d{1, 0, 0};
	EXPECT_THROW(exp_series(field("d/dx1", d), sf("x1^10", d)), DomainError);
	EXPECT_EQ(exp_series(field("d/dx1", d), sf("x1", d)), sf("x1 + 1", d));
}
