#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string_view>
#include <type_traits>
#include <vector>

#include <lazyspike/graph.hpp>
#include <lazyspike/parallel.hpp>
#include <lazyspike/types.hpp>

namespace lazyspike
{
enum class delivery_strategy
{
	naive,
	sliced
};

std::string_view to_string( delivery_strategy s );
delivery_strategy parse_delivery( std::string_view s );

// Row-wise scatter: every arriving source informs all of its targets.
// Order is ascending source, then ascending column; single-threaded so float
// accumulation order is fixed.
template <class S, class Acc, class Deliver>
void deliver_naive( std::span<neuron_id const> arrivals, adjacency_list const & adj, synapse_table<S> const & syn,
                    std::span<Acc> acc, Deliver && deliver )
{
	for( neuron_id const src : arrivals )
	{
		S const * row = syn.row_data( src );
		auto const ids = adj.neighbors( src );
		for( std::uint32_t c = 0; c < ids.size(); c++ )
			deliver( std::is_empty_v<S> ? row[0] : row[c], src, acc[ids[c]] );
	}
}

// Local copy of the accumulators of one chunk of neurons.
template <class Acc>
class slice_buffer
{
public:
	explicit slice_buffer( std::uint32_t capacity = 0 ) : _buf( capacity ) {}

	void load( std::span<Acc const> acc, id_range chunk )
	{
		_range = chunk;
		if( _buf.size() < chunk.size() ) _buf.resize( chunk.size() );
		std::copy( acc.begin() + chunk.first, acc.begin() + chunk.last, _buf.begin() );
	}

	Acc & local( neuron_id id ) { return _buf[id - _range.first]; }
	Acc const & local( neuron_id id ) const { return _buf[id - _range.first]; }
	id_range range() const { return _range; }

	// Copies exactly the loaded chunk back; nothing outside it is touched.
	void writeback( std::span<Acc> acc ) const
	{
		std::copy( _buf.begin(), _buf.begin() + _range.size(), acc.begin() + _range.first );
	}

private:
	std::vector<Acc> _buf;
	id_range _range{};
};

// Slice-partitioned delivery. Slice k only ever touches neurons of chunk k,
// so each slice is processed by one worker in a small local buffer. Within a
// slice, order is ascending source then ascending column, which matches the
// per-destination order of deliver_naive exactly.
template <class S, class Acc, class Deliver>
void deliver_sliced( std::span<neuron_id const> arrivals, adjacency_list const & adj, pivot_table const & pivots,
                     synapse_table<S> const & syn, std::span<Acc> acc, int workers, Deliver && deliver )
{
	if( arrivals.empty() ) return;

	parallel_for( pivots.num_slices(), workers, [&]( std::int64_t k ) {
		auto const slice = std::uint32_t( k );
		thread_local slice_buffer<Acc> buf;
		bool loaded = false;

		for( neuron_id const src : arrivals )
		{
			column_range const cols = row_slice( pivots, src, slice );
			if( cols.empty() ) continue;
			if( !loaded )
			{
				buf.load( acc, pivots.chunk( slice ) );
				loaded = true;
			}
			S const * row = syn.row_data( src );
			auto const ids = adj.row( src );
			for( std::uint32_t c = cols.begin; c < cols.end; c++ )
				deliver( std::is_empty_v<S> ? row[0] : row[c], src, buf.local( ids[c] ) );
		}
		if( loaded ) buf.writeback( acc );
	} );
}
} // namespace lazyspike
