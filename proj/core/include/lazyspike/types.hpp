#pragma once

#include <cstdint>
#include <limits>

namespace lazyspike
{
using neuron_id = std::uint32_t;
using step_t = std::int64_t;

// Padding value for unused adjacency cells. Larger than every valid id, so
// sorting a row pushes padding to the end.
inline constexpr neuron_id sentinel = std::numeric_limits<neuron_id>::max();

// Half-open id interval [first, last).
struct id_range
{
	neuron_id first = 0;
	neuron_id last = 0;

	constexpr bool empty() const { return first >= last; }
	constexpr std::uint32_t size() const { return empty() ? 0 : last - first; }
	constexpr bool contains( neuron_id i ) const { return i >= first && i < last; }
	friend constexpr bool operator==( id_range, id_range ) = default;
};

// Half-open column interval inside one adjacency row.
struct column_range
{
	std::uint32_t begin = 0;
	std::uint32_t end = 0;

	constexpr bool empty() const { return begin >= end; }
	constexpr std::uint32_t size() const { return empty() ? 0 : end - begin; }
	friend constexpr bool operator==( column_range, column_range ) = default;
};
} // namespace lazyspike
