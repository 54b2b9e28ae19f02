#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <lazyspike/error.hpp>
#include <lazyspike/parallel.hpp>
#include <lazyspike/types.hpp>

namespace lazyspike
{
struct population
{
	std::string name;
	std::uint32_t size = 0;
};

struct connection
{
	std::size_t src_pop = 0;
	std::size_t dst_pop = 0;
	double probability = 0.0;
};

// Neuron groups laid out back to back in id space, plus pairwise
// connection probabilities between them.
struct graph_spec
{
	std::vector<population> populations;
	std::vector<connection> connections;
	std::uint64_t seed = 0;
	bool allow_self = false;
	// Row width is the max realized out-degree rounded up to this.
	std::uint32_t width_alignment = 32;

	std::uint32_t num_neurons() const;
	id_range range( std::size_t pop ) const;
	std::size_t population_of( neuron_id i ) const;
	// Expected number of synapses under independent Bernoulli sampling.
	double expected_synapses() const;
	void validate() const;
};

// Rectangular N x W table of outgoing connections. Each row is sorted
// ascending, holds distinct ids < N and is padded with `sentinel`.
class adjacency_list
{
public:
	adjacency_list() = default;
	// Takes ownership of a row-major N x W grid; checks every invariant.
	adjacency_list( std::uint32_t num_neurons, std::uint32_t width, std::vector<neuron_id> entries );

	// Builds from explicit rows; width = max row length (or `width` if larger).
	static adjacency_list from_rows( std::vector<std::vector<neuron_id>> const & rows, std::uint32_t width = 0 );

	std::uint32_t num_neurons() const { return _n; }
	std::uint32_t width() const { return _w; }
	std::size_t num_cells() const { return std::size_t( _n ) * _w; }
	std::size_t num_synapses() const { return _num_synapses; }

	neuron_id operator()( neuron_id row, std::uint32_t col ) const { return _entries[std::size_t( row ) * _w + col]; }
	// Full padded row.
	std::span<neuron_id const> row( neuron_id i ) const { return { _entries.data() + std::size_t( i ) * _w, _w }; }
	// Valid prefix only.
	std::span<neuron_id const> neighbors( neuron_id i ) const { return row( i ).first( _degree[i] ); }
	std::uint32_t degree( neuron_id i ) const { return _degree[i]; }

	std::vector<neuron_id> const & entries() const { return _entries; }

	// Throws invalid_input naming the first violated invariant.
	void validate() const;
	bool rows_sorted() const;

	// Order-sensitive 64-bit digest of the topology.
	std::uint64_t hash() const;

private:
	struct unchecked_t
	{
	};
	adjacency_list( unchecked_t, std::uint32_t n, std::uint32_t w, std::vector<neuron_id> entries );
	void count_degrees();

	std::uint32_t _n = 0;
	std::uint32_t _w = 0;
	std::vector<neuron_id> _entries;
	std::vector<std::uint32_t> _degree;
	std::size_t _num_synapses = 0;

	friend adjacency_list build_adjacency( graph_spec const &, int );
};

// Per-row slice boundaries: columns [p(i,k), p(i,k+1)) of row i hold exactly
// the ids in chunk k = [k*C, (k+1)*C). p(i,0) == 0, p(i,S) == degree(i).
class pivot_table
{
public:
	pivot_table() = default;
	pivot_table( std::uint32_t num_neurons, std::uint32_t chunk_size );

	std::uint32_t num_neurons() const { return _n; }
	std::uint32_t chunk_size() const { return _chunk; }
	std::uint32_t num_slices() const { return _slices; }
	std::uint32_t stride() const { return _slices + 1; }

	std::uint32_t operator()( neuron_id row, std::uint32_t k ) const
	{
		return _pivots[std::size_t( row ) * stride() + k];
	}
	std::uint32_t & operator()( neuron_id row, std::uint32_t k ) { return _pivots[std::size_t( row ) * stride() + k]; }
	std::span<std::uint32_t const> row( neuron_id i ) const
	{
		return { _pivots.data() + std::size_t( i ) * stride(), stride() };
	}
	id_range chunk( std::uint32_t k ) const;
	std::vector<std::uint32_t> const & raw() const { return _pivots; }

	friend bool operator==( pivot_table const &, pivot_table const & ) = default;

private:
	std::uint32_t _n = 0;
	std::uint32_t _chunk = 1;
	std::uint32_t _slices = 0;
	std::vector<std::uint32_t> _pivots;
};

// Samples the topology: every candidate (src, dst) pair allowed by the graph_spec is
// an independent Bernoulli trial. Deterministic for a fixed seed regardless
// of `workers`.
adjacency_list build_adjacency( graph_spec const & spec, int workers = 1 );

// Binary-searches, per row, the first column whose id >= k*C for k = 0..S.
// With check_sorted, rejects unsorted rows instead of returning garbage.
pivot_table compute_pivots( adjacency_list const & adj, std::uint32_t chunk_size, bool check_sorted = false,
                            int workers = 1 );

inline column_range row_slice( pivot_table const & pivots, neuron_id src, std::uint32_t slice )
{
	return { pivots( src, slice ), pivots( src, slice + 1 ) };
}

inline std::uint32_t out_degree( adjacency_list const & adj, neuron_id src ) { return adj.degree( src ); }

// Debug fixture format: one line per row, valid ids separated by spaces.
void write_adjacency( std::ostream & os, adjacency_list const & adj );
// Rows are padded to the longest row, or to `width` if larger.
adjacency_list read_adjacency( std::istream & is, std::uint32_t width = 0 );

// Model-defined per-synapse state, same shape as the adjacency list. Empty
// state types take no storage.
template <class S>
class synapse_table
{
public:
	synapse_table() = default;
	synapse_table( std::uint32_t num_neurons, std::uint32_t width ) : _n( num_neurons ), _w( width )
	{
		if constexpr( !std::is_empty_v<S> )
		{
			std::size_t const cells = std::size_t( num_neurons ) * width;
			try
			{
				_data.resize( cells );
			}
			catch( std::bad_alloc const & )
			{
				throw allocation_failure( "synapse table", cells * sizeof( S ) );
			}
		}
	}

	std::uint32_t num_neurons() const { return _n; }
	std::uint32_t width() const { return _w; }

	S & operator()( neuron_id row, std::uint32_t col )
	{
		if constexpr( std::is_empty_v<S> )
			return _empty;
		else
			return _data[std::size_t( row ) * _w + col];
	}
	S const & operator()( neuron_id row, std::uint32_t col ) const
	{
		if constexpr( std::is_empty_v<S> )
			return _empty;
		else
			return _data[std::size_t( row ) * _w + col];
	}
	S * row_data( neuron_id row )
	{
		if constexpr( std::is_empty_v<S> )
			return &_empty;
		else
			return _data.data() + std::size_t( row ) * _w;
	}
	S const * row_data( neuron_id row ) const
	{
		if constexpr( std::is_empty_v<S> )
			return &_empty;
		else
			return _data.data() + std::size_t( row ) * _w;
	}

	std::vector<S> const & data() const { return _data; }

private:
	std::uint32_t _n = 0;
	std::uint32_t _w = 0;
	std::vector<S> _data;
	[[no_unique_address]] mutable S _empty{};
};

// Builds topology and synapse states; init(src, dst) -> S for valid cells.
template <class S, class Init>
std::pair<adjacency_list, synapse_table<S>> build_graph( graph_spec const & spec, Init && init, int workers = 1 )
{
	adjacency_list adj = build_adjacency( spec, workers );
	synapse_table<S> syn( adj.num_neurons(), adj.width() );
	if constexpr( !std::is_empty_v<S> )
	{
		parallel_for( adj.num_neurons(), workers, [&]( std::int64_t i ) {
			auto const src = neuron_id( i );
			auto const nbrs = adj.neighbors( src );
			for( std::uint32_t j = 0; j < nbrs.size(); j++ ) syn( src, j ) = init( src, nbrs[j] );
		} );
	}
	return { std::move( adj ), std::move( syn ) };
}
} // namespace lazyspike
