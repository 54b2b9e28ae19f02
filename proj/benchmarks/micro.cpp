#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include <lazyspike/delivery.hpp>
#include <lazyspike/engine.hpp>
#include <lazyspike/graph.hpp>
#include <lazyspike/history.hpp>
#include <lazyspike/models/brunel.hpp>
#include <lazyspike/models/stdp.hpp>
#include <lazyspike/plasticity.hpp>

using namespace lazyspike;

namespace
{
graph_spec uniform( std::uint32_t n, double p )
{
	graph_spec g;
	g.populations = { { "all", n } };
	g.connections = { { 0, 0, p } };
	g.seed = 7;
	return g;
}

// History in which each neuron fired in ~2% of the last 64 steps.
firing_history sparse_history( std::uint32_t n )
{
	firing_history h( n, 64 );
	std::mt19937_64 rng( 3 );
	std::bernoulli_distribution fire( 0.02 );
	for( int s = 0; s < 64; s++ )
		for( neuron_id i = 0; i < n; i++ ) h.push( i, fire( rng ) );
	return h;
}

stdp_rule const rule( 0.1, 20.0, 20.0, 0.0105f, 0.01f, 2.0f );

template <bool Event>
void replay_row( benchmark::State & state )
{
	int const age = int( state.range( 0 ) );
	auto const adj = build_adjacency( uniform( 4096, 0.25 ) );
	synapse_table<stdp_synapse> syn( adj.num_neurons(), adj.width() );
	auto const hist = sparse_history( adj.num_neurons() );
	auto update = [&]( stdp_synapse & s, bool pre, bool post, int n ) { rule.update( s, pre, post, n ); };
	column_range const cols{ 0, adj.degree( 0 ) };
	for( auto _ : state )
	{
		if constexpr( Event )
			event_replay_row( adj, syn, hist, 0, cols, age, true, update );
		else
			lazy_replay_row( adj, syn, hist, 0, cols, age, true, update );
		benchmark::DoNotOptimize( syn.row_data( 0 ) );
	}
	state.SetItemsProcessed( state.iterations() * cols.size() );
}
BENCHMARK( replay_row<false> )->Name( "replay_row/lazy" )->Arg( 1 )->Arg( 16 )->Arg( 64 );
BENCHMARK( replay_row<true> )->Name( "replay_row/event" )->Arg( 1 )->Arg( 16 )->Arg( 64 );

template <bool Sliced>
void delivery( benchmark::State & state )
{
	auto const adj = build_adjacency( uniform( 20000, 0.05 ) );
	auto const pivots = compute_pivots( adj, std::uint32_t( state.range( 0 ) ) );
	synapse_table<float> syn( adj.num_neurons(), adj.width() );
	std::vector<float> acc( adj.num_neurons(), 0.0f );
	std::vector<neuron_id> arrivals;
	for( neuron_id i = 0; i < adj.num_neurons(); i += 100 ) arrivals.push_back( i );
	auto deliver = []( float const & w, neuron_id, float & dst ) { dst += w; };
	for( auto _ : state )
	{
		if constexpr( Sliced )
			deliver_sliced( std::span<neuron_id const>( arrivals ), adj, pivots, syn, std::span( acc ), 1, deliver );
		else
			deliver_naive( std::span<neuron_id const>( arrivals ), adj, syn, std::span( acc ), deliver );
		benchmark::ClobberMemory();
	}
	state.SetItemsProcessed( state.iterations() * std::int64_t( arrivals.size() ) * 1000 );
}
BENCHMARK( delivery<false> )->Name( "delivery/naive" )->Arg( 1024 );
BENCHMARK( delivery<true> )->Name( "delivery/sliced" )->Arg( 64 )->Arg( 1024 )->Arg( 8192 );

void pivots( benchmark::State & state )
{
	auto const adj = build_adjacency( uniform( 10000, 0.05 ) );
	for( auto _ : state ) benchmark::DoNotOptimize( compute_pivots( adj, std::uint32_t( state.range( 0 ) ) ) );
	state.SetItemsProcessed( state.iterations() * adj.num_neurons() );
}
BENCHMARK( pivots )->Arg( 64 )->Arg( 1024 );

void build_graph( benchmark::State & state )
{
	auto const spec = uniform( std::uint32_t( state.range( 0 ) ), 0.1 );
	for( auto _ : state ) benchmark::DoNotOptimize( build_adjacency( spec ) );
	state.SetItemsProcessed( state.iterations() * std::int64_t( spec.expected_synapses() ) );
}
BENCHMARK( build_graph )->Arg( 2000 )->Arg( 8000 )->Unit( benchmark::kMillisecond );

void brunel_plus_steps( benchmark::State & state )
{
	strategy_config c;
	c.plasticity = plasticity_strategy( state.range( 0 ) );
	simulation<brunel_plus_model> sim( brunel_plus_model( 4000 ), c, 1 );
	for( auto _ : state ) sim.run_steps( 100 );
	state.SetLabel( std::string( to_string( c.plasticity ) ) );
}
BENCHMARK( brunel_plus_steps )->DenseRange( 0, 2 )->Unit( benchmark::kMillisecond );
} // namespace
BENCHMARK_MAIN();
