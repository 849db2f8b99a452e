#include "superdiff/partitions.hpp"

#include "superdiff/error.hpp"

#include <algorithm>

namespace superdiff {

std::vector<std::pair<OrderedIndexSet, OrderedIndexSet>> ordered_splits(OrderedIndexSet const &index)
{
	if (index.size() >= 64)
		throw DomainError("index set too large to split");
	std::vector<std::pair<OrderedIndexSet, OrderedIndexSet>> out;
	std::uint64_t const count = std::uint64_t(1) << index.size();
	out.reserve(count);
	for (std::uint64_t mask = 0; mask < count; ++mask)
	{
		OrderedIndexSet k, l;
		for (std::size_t i = 0; i < index.size(); ++i)
			((mask >> i) & 1u ? k : l).push_back(index[i]);
		out.emplace_back(std::move(k), std::move(l));
	}
	return out;
}

std::vector<IndexPartition> unordered_partitions(OrderedIndexSet const &index)
{
	if (index.empty())
		throw DomainError("unordered_partitions needs a nonempty index set");
	std::size_t const k = index.size();
	std::vector<IndexPartition> out;
	// restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1])
	std::vector<std::size_t> rgs(k, 0), maxes(k, 0);
	while (true)
	{
		IndexPartition part{index, {}};
		for (std::size_t i = 0; i < k; ++i)
		{
			if (rgs[i] >= part.blocks.size())
				part.blocks.resize(rgs[i] + 1);
			part.blocks[rgs[i]].push_back(index[i]);
		}
		out.push_back(std::move(part));

		std::size_t i = k - 1;
		while (i > 0 && rgs[i] > maxes[i - 1])
			--i;
		if (i == 0)
			break;
		++rgs[i];
		maxes[i] = std::max(maxes[i - 1], rgs[i]);
		for (std::size_t j = i + 1; j < k; ++j)
		{
			rgs[j] = 0;
			maxes[j] = maxes[i];
		}
	}
	return out;
}

std::vector<std::vector<IndexSet>> unordered_partitions(IndexSet index)
{
	std::vector<std::vector<IndexSet>> out;
	for (auto const &part : unordered_partitions(index.indices()))
	{
		std::vector<IndexSet> blocks;
		for (auto const &b : part.blocks)
			blocks.push_back(IndexSet::from_indices(b));
		out.push_back(std::move(blocks));
	}
	return out;
}

unsigned long long bell_number(unsigned k)
{
	std::vector<unsigned long long> row{1};
	for (unsigned i = 0; i < k; ++i)
	{
		std::vector<unsigned long long> next{row.back()};
		for (auto v : row)
			next.push_back(next.back() + v);
		row = std::move(next);
	}
	return row.front();
}

} // namespace superdiff
