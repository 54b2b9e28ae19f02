#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include <lazyspike/error.hpp>
#include <lazyspike/graph.hpp>

using namespace lazyspike;

namespace
{
graph_spec uniform_spec( std::uint32_t n, double p, std::uint64_t seed, std::uint32_t align = 32 )
{
	graph_spec s;
	s.populations = { { "all", n } };
	s.connections = { { 0, 0, p } };
	s.seed = seed;
	s.width_alignment = align;
	return s;
}

// The 9-neuron example: rows 0 and 8 carry the interesting structure.
adjacency_list nine_neuron_graph()
{
	std::vector<std::vector<neuron_id>> rows( 9 );
	rows[0] = { 0, 1, 2, 4, 6, 7 };
	rows[8] = { 1, 3, 4, 5, 6 };
	return adjacency_list::from_rows( rows, 6 );
}

std::vector<std::uint32_t> pivots_of( pivot_table const & p, neuron_id i )
{
	return { p.row( i ).begin(), p.row( i ).end() };
}
} // namespace

TEST( BuildAdjacency, CompleteDigraphWithoutSelfLoops )
{
	auto const adj = build_adjacency( uniform_spec( 3, 1.0, 1, 1 ) );
	ASSERT_EQ( adj.width(), 2u );
	EXPECT_EQ( std::vector<neuron_id>( adj.row( 0 ).begin(), adj.row( 0 ).end() ), ( std::vector<neuron_id>{ 1, 2 } ) );
	EXPECT_EQ( std::vector<neuron_id>( adj.row( 1 ).begin(), adj.row( 1 ).end() ), ( std::vector<neuron_id>{ 0, 2 } ) );
	EXPECT_EQ( std::vector<neuron_id>( adj.row( 2 ).begin(), adj.row( 2 ).end() ), ( std::vector<neuron_id>{ 0, 1 } ) );
	EXPECT_EQ( out_degree( adj, 0 ), 2u );
}

TEST( BuildAdjacency, PadsRowsWithSentinel )
{
	auto const adj = nine_neuron_graph();
	auto const row = adj.row( 8 );
	EXPECT_EQ( std::vector<neuron_id>( row.begin(), row.end() ),
	           ( std::vector<neuron_id>{ 1, 3, 4, 5, 6, sentinel } ) );
	EXPECT_EQ( out_degree( adj, 8 ), 5u );
	EXPECT_EQ( out_degree( adj, 4 ), 0u );
}

TEST( BuildAdjacency, RealizedCountWithinFiveSigma )
{
	// Binomial over N(N-1) candidate pairs.
	double const n = 1000, p = 0.1;
	double const trials = n * ( n - 1 );
	double const mean = p * trials;
	double const sigma = std::sqrt( trials * p * ( 1 - p ) );
	auto const adj = build_adjacency( uniform_spec( 1000, p, 42 ) );
	EXPECT_LE( std::abs( double( adj.num_synapses() ) - mean ), 5 * sigma );
}

TEST( BuildAdjacency, InvariantsAndDeterminism )
{
	auto const spec = uniform_spec( 700, 0.05, 3 );
	auto const a = build_adjacency( spec, 1 );
	auto const b = build_adjacency( spec, 4 );
	EXPECT_NO_THROW( a.validate() );
	EXPECT_TRUE( a.rows_sorted() );
	EXPECT_EQ( a.width() % 32, 0u );
	EXPECT_EQ( a.entries(), b.entries() );
	EXPECT_EQ( a.hash(), b.hash() );
	for( neuron_id i = 0; i < a.num_neurons(); i++ )
	{
		auto const nb = a.neighbors( i );
		EXPECT_TRUE( std::ranges::adjacent_find( nb ) == nb.end() );
		EXPECT_FALSE( std::ranges::binary_search( nb, i ) );
	}
}

TEST( BuildAdjacency, PopulationBlocksAreRespected )
{
	graph_spec s;
	s.populations = { { "a", 50 }, { "b", 30 } };
	s.connections = { { 0, 1, 0.5 } };
	s.seed = 9;
	auto const adj = build_adjacency( s );
	for( neuron_id i = 0; i < 80; i++ )
		for( neuron_id d : adj.neighbors( i ) )
		{
			EXPECT_LT( i, 50u );
			EXPECT_GE( d, 50u );
		}
}

TEST( BuildAdjacency, RejectsInvalidSpecs )
{
	EXPECT_THROW( build_adjacency( uniform_spec( 0, 0.1, 1 ) ), invalid_input );
	EXPECT_THROW( build_adjacency( uniform_spec( 10, 1.5, 1 ) ), invalid_input );
	EXPECT_THROW( build_adjacency( uniform_spec( 10, -0.1, 1 ) ), invalid_input );
	auto dup = uniform_spec( 10, 0.1, 1 );
	dup.connections.push_back( { 0, 0, 0.2 } );
	EXPECT_THROW( build_adjacency( dup ), invalid_input );
}

TEST( AdjacencyList, ChecksConstructorInvariants )
{
	EXPECT_THROW( adjacency_list( 3, 2, { 1, 2, 0 } ), invalid_input );                    // wrong size
	EXPECT_THROW( adjacency_list( 2, 2, { 1, 0, sentinel, 1 } ), invalid_input );          // padding before id
	EXPECT_THROW( adjacency_list( 2, 2, { 5, sentinel, sentinel, sentinel } ), invalid_input );  // id out of range
	EXPECT_NO_THROW( adjacency_list( 2, 2, { 1, sentinel, sentinel, sentinel } ) );
}

TEST( AdjacencyList, TextRoundTrip )
{
	auto const adj = build_adjacency( uniform_spec( 100, 0.1, 5 ) );
	std::stringstream ss;
	write_adjacency( ss, adj );
	auto const back = read_adjacency( ss, adj.width() );
	EXPECT_EQ( back.entries(), adj.entries() );
	EXPECT_EQ( back.width(), adj.width() );
}

TEST( ComputePivots, NineNeuronExample )
{
	auto const adj = nine_neuron_graph();
	auto const p = compute_pivots( adj, 3, true );
	EXPECT_EQ( pivots_of( p, 0 ), ( std::vector<std::uint32_t>{ 0, 3, 4, 6 } ) );
	EXPECT_EQ( pivots_of( p, 8 ), ( std::vector<std::uint32_t>{ 0, 1, 4, 5 } ) );
	EXPECT_EQ( pivots_of( p, 3 ), ( std::vector<std::uint32_t>{ 0, 0, 0, 0 } ) );
}

TEST( RowSlice, NineNeuronExample )
{
	auto const adj = nine_neuron_graph();
	auto const p = compute_pivots( adj, 3 );
	auto const s1 = row_slice( p, 0, 1 );
	EXPECT_EQ( s1.begin, 3u );
	EXPECT_EQ( s1.end, 4u );
	EXPECT_EQ( adj( 0, 3 ), 4u );
	auto const s0 = row_slice( p, 0, 0 );
	EXPECT_EQ( s0.begin, 0u );
	EXPECT_EQ( s0.end, 3u );
	for( std::uint32_t k = 0; k < 3; k++ ) EXPECT_TRUE( row_slice( p, 5, k ).empty() );
}

TEST( ComputePivots, MatchesCountingOracle )
{
	std::mt19937_64 rng( 21 );
	for( int g = 0; g < 30; g++ )
	{
		std::uint32_t const n = 1 + std::uint32_t( rng() % 700 );
		std::uint32_t const c = 1u << ( 5 + rng() % 4 );
		auto const adj = build_adjacency( uniform_spec( n, 0.05 + 0.3 * ( g % 3 ), rng() ) );
		auto const p = compute_pivots( adj, c, true, 2 );
		for( neuron_id i = 0; i < n; i++ )
			for( std::uint32_t k = 0; k <= p.num_slices(); k++ )
			{
				std::uint32_t below = 0;
				for( neuron_id d : adj.neighbors( i ) ) below += std::uint64_t( d ) < std::uint64_t( k ) * c;
				ASSERT_EQ( p( i, k ), below ) << "row " << i << " slice " << k;
			}
	}
}

TEST( ComputePivots, RaggedLastChunkIsClamped )
{
	pivot_table const p( 100, 32 );
	EXPECT_EQ( p.num_slices(), 4u );
	EXPECT_EQ( p.chunk( 3 ).first, 96u );
	EXPECT_EQ( p.chunk( 3 ).last, 100u );
}

TEST( AdjacencyList, RejectsUnsortedOrDuplicateRows )
{
	EXPECT_THROW( adjacency_list::from_rows( { { 1, 0 }, { 0 } } ), invalid_input );
	EXPECT_THROW( adjacency_list::from_rows( { { 1, 1 }, { 0 } } ), invalid_input );
	std::stringstream ss( "1 2\n0\n0 1\n" );
	EXPECT_EQ( read_adjacency( ss ).num_synapses(), 5u );
}

TEST( SynapseTable, EmptyStateTakesNoStorage )
{
	struct nothing
	{
	};
	synapse_table<nothing> t( 1000, 64 );
	EXPECT_EQ( t.num_neurons(), 1000u );
	synapse_table<float> f( 10, 4 );
	f( 3, 2 ) = 1.5f;
	EXPECT_EQ( f( 3, 2 ), 1.5f );
	EXPECT_EQ( f.row_data( 3 )[2], 1.5f );
}

TEST( AdjacencyList, TextFixturePadsToLongestRow )
{
	std::stringstream ss( "1 2\n\n0\n" );
	auto const adj = read_adjacency( ss );
	EXPECT_EQ( adj.width(), 2u );
	EXPECT_EQ( adj.degree( 1 ), 0u );
	EXPECT_EQ( adj( 2, 1 ), sentinel );
}
