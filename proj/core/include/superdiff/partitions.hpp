#pragma once

#include "superdiff/index_set.hpp"

#include <utility>
#include <vector>

namespace superdiff {

using OrderedIndexSet = std::vector<unsigned>;

/// Decomposition of an ordered index set into disjoint nonempty blocks, each
/// block keeping the order induced from the parent.
struct IndexPartition
{
	OrderedIndexSet parent;
	std::vector<OrderedIndexSet> blocks;

	bool operator==(IndexPartition const &) const = default;
};

/// All pairs (K, L) with I = K + L as ordered sets; 2^|I| entries, ordered
/// by the membership bitmask of K over the positions of I.
std::vector<std::pair<OrderedIndexSet, OrderedIndexSet>> ordered_splits(OrderedIndexSet const &index);

/// All set partitions of I into unordered blocks (Bell(|I|) entries), in
/// restricted-growth-string order. Throws DomainError for empty I.
std::vector<IndexPartition> unordered_partitions(OrderedIndexSet const &index);

/// Same enumeration over a bitmask index set, blocks as IndexSets.
std::vector<std::vector<IndexSet>> unordered_partitions(IndexSet index);

/// Bell numbers by the triangle recurrence.
unsigned long long bell_number(unsigned k);

} // namespace superdiff
