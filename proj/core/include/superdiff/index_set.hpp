#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace superdiff {

/// Upper bound on the number of odd generators of any single algebra.
inline constexpr unsigned kMaxOddGenerators = 31;

/// A strictly increasing subset of {1, ..., 31}, stored as a bitmask
/// (bit i-1 set iff i is a member).
///
/// Ordering is lexicographic on the sorted index lists, so the empty set
/// comes first and {1} < {1,2} < {2}.
class IndexSet {
  public:
	constexpr IndexSet() = default;
	constexpr explicit IndexSet(std::uint32_t bits) : bits_(bits) {}
	IndexSet(std::initializer_list<unsigned> indices);

	static IndexSet from_indices(std::vector<unsigned> const &indices);
	static constexpr IndexSet single(unsigned i) { return IndexSet(1u << (i - 1)); }
	static constexpr IndexSet range(unsigned n)
	{
		return IndexSet(n == 0 ? 0u : (n >= 32 ? ~0u : ((1u << n) - 1)));
	}

	constexpr std::uint32_t bits() const { return bits_; }
	constexpr unsigned size() const { return unsigned(std::popcount(bits_)); }
	constexpr bool empty() const { return bits_ == 0; }
	constexpr bool contains(unsigned i) const { return (bits_ >> (i - 1)) & 1u; }
	constexpr bool intersects(IndexSet o) const { return (bits_ & o.bits_) != 0; }
	constexpr unsigned parity() const { return size() & 1u; }
	/// Largest member, 0 for the empty set.
	constexpr unsigned max_index() const { return unsigned(32 - std::countl_zero(bits_)); }

	constexpr IndexSet operator|(IndexSet o) const { return IndexSet(bits_ | o.bits_); }
	constexpr IndexSet operator&(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
	constexpr IndexSet without(unsigned i) const { return IndexSet(bits_ & ~(1u << (i - 1))); }
	constexpr IndexSet with(unsigned i) const { return IndexSet(bits_ | (1u << (i - 1))); }

	/// Number of members strictly smaller than i.
	constexpr unsigned count_below(unsigned i) const
	{
		return unsigned(std::popcount(bits_ & ((1u << (i - 1)) - 1)));
	}

	std::vector<unsigned> indices() const;

	/// "1,3" for {1,3}; empty string for the empty set.
	std::string to_string() const;

	constexpr bool operator==(IndexSet const &) const = default;
	std::strong_ordering operator<=>(IndexSet const &o) const;

  private:
	std::uint32_t bits_ = 0;
};

/// Sign (+1 or -1) of the permutation that sorts the concatenation of the
/// increasing lists a and b. Disjointness is the caller's responsibility.
constexpr int merge_sign(IndexSet a, IndexSet b)
{
	unsigned inversions = 0;
	std::uint32_t rest = b.bits();
	while (rest)
	{
		unsigned j = unsigned(std::countr_zero(rest));
		rest &= rest - 1;
		inversions += unsigned(std::popcount(a.bits() >> j >> 1));
	}
	return (inversions & 1u) ? -1 : 1;
}

} // namespace superdiff
