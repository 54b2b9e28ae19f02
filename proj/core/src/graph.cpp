#include <lazyspike/graph.hpp>
#include <lazyspike/random.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lazyspike
{
std::uint32_t graph_spec::num_neurons() const
{
	std::uint64_t n = 0;
	for( auto const & p : populations ) n += p.size;
	return n >= sentinel ? sentinel : std::uint32_t( n );
}

id_range graph_spec::range( std::size_t pop ) const
{
	std::uint32_t first = 0;
	for( std::size_t i = 0; i < pop; i++ ) first += populations[i].size;
	return { first, first + populations.at( pop ).size };
}

std::size_t graph_spec::population_of( neuron_id i ) const
{
	std::uint32_t last = 0;
	for( std::size_t p = 0; p < populations.size(); p++ )
	{
		last += populations[p].size;
		if( i < last ) return p;
	}
	throw_invalid( "neuron id out of range" );
}

double graph_spec::expected_synapses() const
{
	double total = 0.0;
	for( auto const & c : connections )
	{
		double const src = populations[c.src_pop].size;
		double const dst = populations[c.dst_pop].size;
		double pairs = src * dst;
		if( c.src_pop == c.dst_pop && !allow_self ) pairs -= src;
		total += pairs * c.probability;
	}
	return total;
}

void graph_spec::validate() const
{
	if( populations.empty() ) throw_invalid( "graph spec has no populations" );
	std::uint64_t total = 0;
	for( auto const & p : populations )
	{
		if( p.size == 0 ) throw_invalid( "population '" + p.name + "' has size 0" );
		total += p.size;
	}
	if( total >= sentinel ) throw_invalid( "too many neurons for 32-bit ids" );
	if( width_alignment == 0 ) throw_invalid( "width alignment must be >= 1" );

	for( std::size_t i = 0; i < connections.size(); i++ )
	{
		auto const & c = connections[i];
		if( c.src_pop >= populations.size() || c.dst_pop >= populations.size() )
			throw_invalid( "connection refers to unknown population" );
		if( !( c.probability >= 0.0 && c.probability <= 1.0 ) )
			throw_invalid( "connection probability outside [0,1]" );
		for( std::size_t j = 0; j < i; j++ )
			if( connections[j].src_pop == c.src_pop && connections[j].dst_pop == c.dst_pop )
				throw_invalid( "duplicate connection between the same populations" );
	}
}

adjacency_list::adjacency_list( unchecked_t, std::uint32_t n, std::uint32_t w, std::vector<neuron_id> entries )
    : _n( n )
    , _w( w )
    , _entries( std::move( entries ) )
{
	count_degrees();
}

adjacency_list::adjacency_list( std::uint32_t num_neurons, std::uint32_t width, std::vector<neuron_id> entries )
    : adjacency_list( unchecked_t{}, num_neurons, width, std::move( entries ) )
{
	validate();
}

void adjacency_list::count_degrees()
{
	if( _entries.size() != std::size_t( _n ) * _w ) throw_invalid( "adjacency grid size does not match N x W" );
	_degree.assign( _n, 0 );
	_num_synapses = 0;
	for( neuron_id i = 0; i < _n; i++ )
	{
		auto const r = row( i );
		auto const it = std::find( r.begin(), r.end(), sentinel );
		_degree[i] = std::uint32_t( it - r.begin() );
		_num_synapses += _degree[i];
	}
}

adjacency_list adjacency_list::from_rows( std::vector<std::vector<neuron_id>> const & rows, std::uint32_t width )
{
	auto const n = std::uint32_t( rows.size() );
	std::size_t w = width;
	for( auto const & r : rows ) w = std::max( w, r.size() );

	std::vector<neuron_id> entries( n * w, sentinel );
	for( std::uint32_t i = 0; i < n; i++ ) std::copy( rows[i].begin(), rows[i].end(), entries.begin() + i * w );
	return adjacency_list( n, std::uint32_t( w ), std::move( entries ) );
}

bool adjacency_list::rows_sorted() const
{
	for( neuron_id i = 0; i < _n; i++ )
		if( !std::is_sorted( row( i ).begin(), row( i ).end() ) ) return false;
	return true;
}

void adjacency_list::validate() const
{
	for( neuron_id i = 0; i < _n; i++ )
	{
		auto const r = row( i );
		auto const d = _degree[i];
		for( std::uint32_t j = 0; j < d; j++ )
		{
			if( r[j] >= _n )
				throw_invalid( "adjacency row " + std::to_string( i ) + " holds out-of-range id " +
				               std::to_string( r[j] ) );
			if( j > 0 && r[j - 1] >= r[j] )
				throw_invalid( "adjacency row " + std::to_string( i ) + " is not strictly ascending" );
		}
		for( std::uint32_t j = d; j < _w; j++ )
			if( r[j] != sentinel )
				throw_invalid( "adjacency row " + std::to_string( i ) + " has padding before a valid entry" );
	}
}

std::uint64_t adjacency_list::hash() const
{
	std::uint64_t h = hash_key( _n, _w );
	for( auto const e : _entries ) h = hash_key( h, e );
	return h;
}

id_range pivot_table::chunk( std::uint32_t k ) const
{
	std::uint64_t const first = std::uint64_t( k ) * _chunk;
	std::uint64_t const last = std::min<std::uint64_t>( first + _chunk, _n );
	return { neuron_id( first ), neuron_id( last ) };
}

pivot_table::pivot_table( std::uint32_t num_neurons, std::uint32_t chunk_size )
    : _n( num_neurons )
    , _chunk( chunk_size )
{
	if( chunk_size == 0 ) throw_invalid( "chunk size must be >= 1" );
	_slices = std::uint32_t( ( std::uint64_t( num_neurons ) + chunk_size - 1 ) / chunk_size );
	std::size_t const cells = std::size_t( _n ) * stride();
	try
	{
		_pivots.assign( cells, 0 );
	}
	catch( std::bad_alloc const & )
	{
		throw allocation_failure( "pivot table", cells * sizeof( std::uint32_t ) );
	}
}

pivot_table compute_pivots( adjacency_list const & adj, std::uint32_t chunk_size, bool check_sorted, int workers )
{
	if( check_sorted && !adj.rows_sorted() ) throw_invalid( "compute_pivots: adjacency rows must be sorted" );

	pivot_table piv( adj.num_neurons(), chunk_size );
	std::uint32_t const slices = piv.num_slices();

	parallel_for( adj.num_neurons(), workers, [&]( std::int64_t i ) {
		auto const src = neuron_id( i );
		auto const r = adj.row( src );
		auto first = r.begin();
		for( std::uint32_t k = 0; k <= slices; k++ )
		{
			// Sentinels sort last, so searching the padded row yields the
			// degree for the final bound without special-casing.
			std::uint64_t const bound = std::uint64_t( k ) * chunk_size;
			neuron_id const key = bound >= sentinel ? sentinel : neuron_id( bound );
			first = std::lower_bound( first, r.end(), key );
			piv( src, k ) = std::uint32_t( first - r.begin() );
		}
		// The last pivot bounds every valid entry even when padding is absent.
		piv( src, slices ) = adj.degree( src );
	} );
	return piv;
}

namespace
{
struct row_block
{
	std::vector<neuron_id> ids;
};

void sample_row( graph_spec const & spec, std::vector<connection> const & outgoing, neuron_id src,
                 std::vector<neuron_id> & out )
{
	counter_rng rng( spec.seed, src );
	for( auto const & c : outgoing )
	{
		if( c.probability <= 0.0 ) continue;
		id_range const dst = spec.range( c.dst_pop );
		double const log_q = std::log1p( -c.probability );

		// Geometric gaps between successes reproduce independent Bernoulli
		// trials over the candidate targets in O(degree).
		std::uint64_t pos = dst.first;
		while( pos < dst.last )
		{
			if( c.probability < 1.0 )
			{
				double const skip = std::floor( std::log( rng.open_unit() ) / log_q );
				if( skip >= double( dst.last - pos ) ) break;
				pos += std::uint64_t( skip );
			}
			if( pos != src || spec.allow_self ) out.push_back( neuron_id( pos ) );
			pos++;
		}
	}
}
} // namespace

adjacency_list build_adjacency( graph_spec const & spec, int workers )
{
	spec.validate();
	std::uint32_t const n = spec.num_neurons();

	// Outgoing connections per source population, by ascending target range,
	// so rows come out sorted.
	std::vector<std::vector<connection>> outgoing( spec.populations.size() );
	for( auto const & c : spec.connections ) outgoing[c.src_pop].push_back( c );
	for( auto & v : outgoing )
		std::sort( v.begin(), v.end(), []( auto const & a, auto const & b ) { return a.dst_pop < b.dst_pop; } );

	std::vector<std::uint32_t> degree( n, 0 );

	std::size_t const block_rows = 1024;
	std::size_t const num_blocks = ( n + block_rows - 1 ) / block_rows;
	std::vector<row_block> blocks( num_blocks );

	parallel_for_dynamic( std::int64_t( num_blocks ), workers, [&]( std::int64_t b ) {
		std::size_t const first = std::size_t( b ) * block_rows;
		std::size_t const last = std::min<std::size_t>( first + block_rows, n );
		auto & ids = blocks[b].ids;
		for( std::size_t i = first; i < last; i++ )
		{
			std::size_t const before = ids.size();
			sample_row( spec, outgoing[spec.population_of( neuron_id( i ) )], neuron_id( i ), ids );
			degree[i] = std::uint32_t( ids.size() - before );
		}
	} );

	std::uint32_t const max_degree = n ? *std::max_element( degree.begin(), degree.end() ) : 0;
	std::uint32_t const align = spec.width_alignment;
	std::uint32_t const width = ( max_degree + align - 1 ) / align * align;

	std::size_t const cells = std::size_t( n ) * width;
	std::vector<neuron_id> entries;
	try
	{
		entries.assign( cells, sentinel );
	}
	catch( std::bad_alloc const & )
	{
		throw allocation_failure( "adjacency list", cells * sizeof( neuron_id ) );
	}

	parallel_for( std::int64_t( num_blocks ), workers, [&]( std::int64_t b ) {
		std::size_t const first = std::size_t( b ) * block_rows;
		std::size_t const last = std::min<std::size_t>( first + block_rows, n );
		auto src = blocks[b].ids.begin();
		for( std::size_t i = first; i < last; i++ )
		{
			std::copy_n( src, degree[i], entries.begin() + i * width );
			src += degree[i];
		}
		std::vector<neuron_id>().swap( blocks[b].ids );
	} );

	adjacency_list adj;
	adj._n = n;
	adj._w = width;
	adj._entries = std::move( entries );
	adj._degree = std::move( degree );
	adj._num_synapses = std::accumulate( adj._degree.begin(), adj._degree.end(), std::size_t( 0 ) );
	return adj;
}

void write_adjacency( std::ostream & os, adjacency_list const & adj )
{
	for( neuron_id i = 0; i < adj.num_neurons(); i++ )
	{
		auto const nbrs = adj.neighbors( i );
		for( std::size_t j = 0; j < nbrs.size(); j++ )
		{
			if( j ) os << ' ';
			os << nbrs[j];
		}
		os << '\n';
	}
}

adjacency_list read_adjacency( std::istream & is, std::uint32_t width )
{
	std::vector<std::vector<neuron_id>> rows;
	std::string line;
	while( std::getline( is, line ) )
	{
		std::istringstream ls( line );
		auto & r = rows.emplace_back();
		std::uint64_t id;
		while( ls >> id )
		{
			if( id >= sentinel ) throw_invalid( "adjacency fixture holds an id >= sentinel" );
			r.push_back( neuron_id( id ) );
		}
		if( !ls.eof() ) throw_invalid( "malformed adjacency fixture line: " + line );
	}
	return adjacency_list::from_rows( rows, width );
}
} // namespace lazyspike
