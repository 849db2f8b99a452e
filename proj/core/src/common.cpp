#include "superdiff/error.hpp"
#include "superdiff/index_set.hpp"
#include "superdiff/rational.hpp"

#include <algorithm>

namespace superdiff {

IndexSet::IndexSet(std::initializer_list<unsigned> indices)
    : IndexSet(from_indices(std::vector<unsigned>(indices)))
{}

IndexSet IndexSet::from_indices(std::vector<unsigned> const &indices)
{
	std::uint32_t bits = 0;
	unsigned prev = 0;
	for (unsigned i : indices)
	{
		if (i == 0 || i > kMaxOddGenerators)
			throw DimensionError("odd index " + std::to_string(i) + " out of range 1.." +
			                     std::to_string(kMaxOddGenerators));
		if (i <= prev)
			throw DomainError("indices must be strictly increasing");
		bits |= 1u << (i - 1);
		prev = i;
	}
	return IndexSet(bits);
}

std::vector<unsigned> IndexSet::indices() const
{
	std::vector<unsigned> out;
	out.reserve(size());
	for (std::uint32_t rest = bits_; rest; rest &= rest - 1)
		out.push_back(unsigned(std::countr_zero(rest)) + 1);
	return out;
}

std::string IndexSet::to_string() const
{
	std::string s;
	for (unsigned i : indices())
	{
		if (!s.empty())
			s += ',';
		s += std::to_string(i);
	}
	return s;
}

std::strong_ordering IndexSet::operator<=>(IndexSet const &o) const
{
	// lexicographic on the increasing index lists
	std::uint32_t a = bits_, b = o.bits_;
	while (a && b)
	{
		unsigned i = unsigned(std::countr_zero(a));
		unsigned j = unsigned(std::countr_zero(b));
		if (i != j)
			return i <=> j;
		a &= a - 1;
		b &= b - 1;
	}
	if (!a && !b)
		return std::strong_ordering::equal;
	return a ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::string ParseDiagnostic::to_string() const
{
	std::string s = "parse error at offset " + std::to_string(offset) + ": " + message;
	if (!expected.empty())
	{
		s += " (expected ";
		for (std::size_t i = 0; i < expected.size(); ++i)
		{
			if (i)
				s += ", ";
			s += expected[i];
		}
		s += ")";
	}
	return s;
}

std::string to_string(Rational const &q) { return q.get_str(); }

Rational factorial(unsigned k)
{
	mpz_class f;
	mpz_fac_ui(f.get_mpz_t(), k);
	return Rational(f);
}

} // namespace superdiff
