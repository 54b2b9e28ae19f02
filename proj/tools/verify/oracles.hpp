#pragma once

// Deliberately simple reference implementations. Nothing here shares code
// with the optimized paths it checks beyond the model callbacks and the
// topology sampler.

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include <lazyspike/bits.hpp>
#include <lazyspike/engine.hpp>
#include <lazyspike/graph.hpp>
#include <lazyspike/models/counting.hpp>
#include <lazyspike/raster.hpp>

namespace lazyspike::verify
{
// Count, for every row and chunk boundary k*C, how many valid entries lie
// below it.
inline std::vector<std::uint32_t> brute_pivots( adjacency_list const & adj, std::uint32_t chunk )
{
	std::uint32_t const n = adj.num_neurons();
	std::uint32_t const slices = ( n + chunk - 1 ) / chunk;
	std::vector<std::uint32_t> out;
	out.reserve( std::size_t( n ) * ( slices + 1 ) );
	for( neuron_id i = 0; i < n; i++ )
		for( std::uint32_t k = 0; k <= slices; k++ )
		{
			std::uint64_t const bound = std::uint64_t( k ) * chunk;
			std::uint32_t count = 0;
			for( std::uint32_t c = 0; c < adj.width(); c++ )
				if( adj( i, c ) != sentinel && adj( i, c ) < bound ) count++;
			out.push_back( count );
		}
	return out;
}

inline std::vector<int> scan_set_bits( bits::word x, int width = 64 )
{
	std::vector<int> out;
	for( int s = width - 1; s >= 0; s-- )
		if( ( x >> s ) & 1u ) out.push_back( s );
	return out;
}

inline bits::word per_bit_mask( bits::word x, int age )
{
	bits::word m = 0;
	for( int s = 0; s < age && s < 64; s++ )
		if( ( x >> s ) & 1u ) m |= bits::word( 1 ) << s;
	return m;
}

// Replay window with an off-by-one: the oldest missed step is dropped. Used
// to prove the equivalence checks catch a faulty window.
struct off_by_one_mask
{
	bits::word operator()( bits::word hist, int age ) const { return bits::recent_mask( hist, age - 1 ); }
};

// Counting-model dynamics with an order-sensitive synapse: the state is a
// running hash of the per-step (pre, post) events, so a flag on the wrong
// step changes the result even when the totals agree.
class sequence_model
{
public:
	using neuron = counting_model::neuron;
	using accumulator = counting_model::accumulator;
	struct synapse
	{
		std::uint64_t h = 0;

		friend bool operator==( synapse const &, synapse const & ) = default;
	};
	static constexpr bool step_decomposable = true;

	explicit sequence_model( counting_params const & p = {} ) : _base( p ) {}

	std::string_view name() const { return "sequence"; }
	graph_spec graph( std::uint64_t seed ) const { return _base.graph( seed ); }
	int delay_steps() const { return _base.delay_steps(); }
	double dt_ms() const { return _base.dt_ms(); }
	neuron init_neuron( neuron_id id, std::uint64_t seed ) const { return _base.init_neuron( id, seed ); }
	synapse init_synapse( neuron_id src, neuron_id dst ) const { return { ( std::uint64_t( src ) << 32 ) | dst }; }
	bool update_neuron( neuron & n, accumulator const & in, neuron_id id, step_context ctx ) const
	{
		return _base.update_neuron( n, in, id, ctx );
	}

	void update_synapse( synapse & s, bool pre, bool post, int n ) const
	{
		for( int i = 1; i < n; i++ ) s.h = mix( s.h, code( false, false ) );
		s.h = mix( s.h, code( pre, post ) );
	}

	void deliver( synapse const & s, neuron_id, accumulator & dst ) const { dst += std::int64_t( 1 + ( s.h >> 61 ) ); }
	id_range plastic_targets( neuron_id ) const { return { 0, _base.num_neurons() }; }

private:
	static std::uint64_t code( bool pre, bool post ) { return 1 + ( pre ? 2u : 0u ) + ( post ? 4u : 0u ); }
	static std::uint64_t mix( std::uint64_t h, std::uint64_t c ) { return h * 0x9E3779B97F4A7C15ull + c; }

	counting_model _base;
};

template <class Model>
struct reference_result
{
	std::vector<spike> raster;
	adjacency_list adj;
	std::vector<std::vector<typename Model::synapse>> synapses;  // per row, valid columns only
	std::vector<std::vector<typename Model::accumulator>> inputs;  // per step, if requested
};

// Single-threaded per-step interpreter with naive plasticity and naive
// delivery and no history window at all: post-synaptic flags come from the
// complete firing log.
template <class Model>
reference_result<Model> reference_run( Model const & m, std::uint64_t seed, step_t steps, bool keep_inputs = false )
{
	reference_result<Model> r;
	r.adj = build_adjacency( m.graph( seed ), 1 );
	auto const & adj = r.adj;
	std::uint32_t const n = adj.num_neurons();
	int const delay = m.delay_steps();

	r.synapses.resize( n );
	for( neuron_id i = 0; i < n; i++ )
		for( neuron_id dst : adj.neighbors( i ) ) r.synapses[i].push_back( m.init_synapse( i, dst ) );

	std::vector<typename Model::neuron> neurons( n );
	for( neuron_id i = 0; i < n; i++ ) neurons[i] = m.init_neuron( i, seed );
	std::vector<typename Model::accumulator> acc( n );
	std::vector<std::vector<neuron_id>> log;
	std::vector<std::uint8_t> fired_now( n ), arriving( n );

	for( step_t t = 0; t < steps; t++ )
	{
		std::vector<neuron_id> fired;
		for( neuron_id i = 0; i < n; i++ )
		{
			bool const f = m.update_neuron( neurons[i], acc[i], i, { seed, t } );
			acc[i] = {};
			fired_now[i] = f;
			if( f )
			{
				fired.push_back( i );
				r.raster.push_back( { t, i } );
			}
		}
		log.push_back( fired );

		std::vector<neuron_id> const none;
		auto const & arrivals = t >= delay ? log[std::size_t( t - delay )] : none;
		for( neuron_id src : arrivals ) arriving[src] = 1;

		for( neuron_id i = 0; i < n; i++ )
		{
			id_range const plastic = m.plastic_targets( i );
			auto const nbrs = adj.neighbors( i );
			for( std::size_t c = 0; c < nbrs.size(); c++ )
				if( plastic.contains( nbrs[c] ) )
					m.update_synapse( r.synapses[i][c], arriving[i] != 0, fired_now[nbrs[c]] != 0, 1 );
		}

		for( neuron_id src : arrivals )
		{
			auto const nbrs = adj.neighbors( src );
			for( std::size_t c = 0; c < nbrs.size(); c++ ) m.deliver( r.synapses[src][c], src, acc[nbrs[c]] );
			arriving[src] = 0;
		}
		if( keep_inputs ) r.inputs.push_back( acc );
	}
	return r;
}

// Accumulator a dense 0/1 connectivity matrix times per-synapse weights
// produces for one set of arriving sources.
inline std::vector<std::int64_t> dense_delivery( adjacency_list const & adj, std::span<neuron_id const> arrivals,
                                                 auto const & weight )
{
	std::uint32_t const n = adj.num_neurons();
	std::vector<std::int64_t> matrix( std::size_t( n ) * n, 0 );
	for( neuron_id i = 0; i < n; i++ )
		for( std::uint32_t c = 0; c < adj.degree( i ); c++ ) matrix[std::size_t( adj( i, c ) ) * n + i] = weight( i, c );
	std::vector<std::int64_t> x( n, 0 ), y( n, 0 );
	for( neuron_id src : arrivals ) x[src] += 1;
	for( neuron_id d = 0; d < n; d++ )
		for( neuron_id s = 0; s < n; s++ ) y[d] += matrix[std::size_t( d ) * n + s] * x[s];
	return y;
}

// Per-row view of an engine synapse table, valid columns only, for
// comparison with reference_result::synapses.
template <class S>
std::vector<std::vector<S>> valid_synapses( adjacency_list const & adj, synapse_table<S> const & syn )
{
	std::vector<std::vector<S>> out( adj.num_neurons() );
	for( neuron_id i = 0; i < adj.num_neurons(); i++ )
		for( std::uint32_t c = 0; c < adj.degree( i ); c++ ) out[i].push_back( syn( i, c ) );
	return out;
}

// Runs a simulation for `steps` steps with the raster captured.
template <class Model, class Mask = recent_mask_fn>
struct strategy_run
{
	std::vector<spike> raster;
	std::vector<std::vector<typename Model::synapse>> synapses;
	run_metrics metrics;
	std::uint64_t graph_hash = 0;
};

template <class Model, class Mask = recent_mask_fn>
strategy_run<Model, Mask> run_with( Model const & m, strategy_config const & cfg, std::uint64_t seed, step_t steps )
{
	simulation<Model, Mask> sim( m, cfg, seed );
	raster_recorder rec;
	sim.set_raster_sink( std::ref( rec ) );
	sim.run_steps( steps );
	return { std::move( rec.spikes ), valid_synapses( sim.adjacency(), sim.synapses() ), sim.metrics(),
	         sim.adjacency().hash() };
}
} // namespace lazyspike::verify
