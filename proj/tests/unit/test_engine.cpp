#include <array>
#include <atomic>
#include <memory>

#include <gtest/gtest.h>

#include <lazyspike/engine.hpp>
#include <lazyspike/error.hpp>
#include <lazyspike/models/brunel.hpp>
#include <lazyspike/models/counting.hpp>
#include <lazyspike/raster.hpp>

using namespace lazyspike;

namespace
{
// Two neurons, 0 -> 1, delay 3. Neuron 0 fires once at `fire_step`;
// neuron 1 remembers the first step at which it saw input.
struct probe_model
{
	struct neuron
	{
		step_t first_input = -1;
	};
	using accumulator = int;
	struct synapse
	{
	};
	static constexpr bool step_decomposable = true;
	step_t fire_step = 5;

	std::string_view name() const { return "probe"; }
	graph_spec graph( std::uint64_t seed ) const
	{
		graph_spec g;
		g.populations = { { "src", 1 }, { "dst", 1 } };
		g.connections = { { 0, 1, 1.0 } };
		g.seed = seed;
		g.width_alignment = 1;
		return g;
	}
	int delay_steps() const { return 3; }
	double dt_ms() const { return 0.1; }
	neuron init_neuron( neuron_id, std::uint64_t ) const { return {}; }
	synapse init_synapse( neuron_id, neuron_id ) const { return {}; }
	bool update_neuron( neuron & n, accumulator const & in, neuron_id id, step_context ctx ) const
	{
		if( in != 0 && n.first_input < 0 ) n.first_input = ctx.step;
		return id == 0 && ctx.step == fire_step;
	}
	void update_synapse( synapse &, bool, bool, int ) const {}
	void deliver( synapse const &, neuron_id, accumulator & dst ) const { dst += 1; }
	id_range plastic_targets( neuron_id ) const { return {}; }
};

// Counting model that also counts synapse callback invocations.
struct call_counting_model : counting_model
{
	std::shared_ptr<std::atomic<std::uint64_t>> calls = std::make_shared<std::atomic<std::uint64_t>>( 0 );
	using counting_model::counting_model;
	void update_synapse( synapse & s, bool pre, bool post, int n ) const
	{
		calls->fetch_add( 1, std::memory_order_relaxed );
		counting_model::update_synapse( s, pre, post, n );
	}
};

// Static state and no activity: nothing may change but the clock.
struct inert_model
{
	struct neuron
	{
		float v = 1.5f;
	};
	using accumulator = float;
	struct synapse
	{
		float w = 0.25f;
		friend bool operator==( synapse const &, synapse const & ) = default;
	};
	static constexpr bool step_decomposable = true;
	std::string_view name() const { return "inert"; }
	graph_spec graph( std::uint64_t seed ) const
	{
		graph_spec g;
		g.populations = { { "all", 300 } };
		g.connections = { { 0, 0, 0.1 } };
		g.seed = seed;
		return g;
	}
	int delay_steps() const { return 2; }
	double dt_ms() const { return 0.1; }
	neuron init_neuron( neuron_id id, std::uint64_t ) const { return { float( id ) }; }
	synapse init_synapse( neuron_id, neuron_id ) const { return {}; }
	bool update_neuron( neuron &, accumulator const &, neuron_id, step_context ) const { return false; }
	void update_synapse( synapse &, bool pre, bool post, int ) const
	{
		if( pre || post ) throw std::logic_error( "spike in an inert network" );
	}
	void deliver( synapse const & s, neuron_id, accumulator & dst ) const { dst += s.w; }
	id_range plastic_targets( neuron_id ) const { return { 0, 300 }; }
};

strategy_config config( plasticity_strategy p, delivery_strategy d, int workers = 1 )
{
	strategy_config c;
	c.plasticity = p;
	c.delivery = d;
	c.chunk_size = 64;
	c.workers = workers;
	return c;
}

template <class Model>
std::pair<std::vector<spike>, std::vector<typename Model::synapse>> run_capture( Model const & m,
                                                                                 strategy_config const & c,
                                                                                 step_t steps, std::uint64_t seed = 3 )
{
	simulation<Model> sim( m, c, seed );
	raster_recorder rec;
	sim.set_raster_sink( std::ref( rec ) );
	sim.run_steps( steps );
	std::vector<typename Model::synapse> syn;
	for( neuron_id i = 0; i < sim.adjacency().num_neurons(); i++ )
		for( std::uint32_t c2 = 0; c2 < sim.adjacency().degree( i ); c2++ ) syn.push_back( sim.synapses()( i, c2 ) );
	return { rec.spikes, syn };
}

constexpr std::array plasticities = { plasticity_strategy::naive, plasticity_strategy::lazy, plasticity_strategy::event };
constexpr std::array deliveries = { delivery_strategy::naive, delivery_strategy::sliced };
} // namespace

TEST( StrategyConfig, Validation )
{
	strategy_config c;
	EXPECT_NO_THROW( c.validate() );
	c.chunk_size = 48;
	EXPECT_THROW( c.validate(), invalid_input );
	c.chunk_size = 16;
	EXPECT_THROW( c.validate(), invalid_input );
	c.chunk_size = 32;
	c.history_bits = 16;
	EXPECT_THROW( c.validate(), invalid_input );
	c.history_bits = 32;
	EXPECT_NO_THROW( c.validate() );
}

TEST( Simulation, DurationToSteps )
{
	simulation<counting_model> sim( counting_model(), {}, 1 );
	sim.run( 0.001 );
	EXPECT_EQ( sim.clock().now, 10 );
	EXPECT_EQ( sim.metrics().steps, 10u );
	EXPECT_DOUBLE_EQ( sim.clock().bio_seconds(), 0.001 );
	EXPECT_THROW( sim.run( -1.0 ), invalid_input );
}

TEST( Simulation, InputTakesEffectOneStepAfterArrival )
{
	for( auto d : deliveries )
	{
		simulation<probe_model> sim( probe_model{}, config( plasticity_strategy::event, d ), 1 );
		sim.run_steps( 20 );
		// Fired at 5, arrives at 5 + 3, consumed by the update of step 9.
		EXPECT_EQ( sim.neurons()[1].first_input, 9 );
	}
}

TEST( Simulation, InertNetworkOnlyAdvancesClock )
{
	for( auto p : plasticities )
	{
		simulation<inert_model> sim( inert_model{}, config( p, delivery_strategy::sliced ), 1 );
		auto const before = std::vector<inert_model::neuron>( sim.neurons().begin(), sim.neurons().end() );
		sim.run_steps( 200 );
		EXPECT_EQ( sim.clock().now, 200 );
		for( std::size_t i = 0; i < before.size(); i++ ) EXPECT_EQ( sim.neurons()[i].v, before[i].v );
		for( float a : sim.accumulators() ) EXPECT_EQ( a, 0.0f );
		for( neuron_id i = 0; i < 300; i++ )
			for( std::uint32_t c = 0; c < sim.adjacency().degree( i ); c++ )
				EXPECT_EQ( sim.synapses()( i, c ), inert_model::synapse{} );
		EXPECT_EQ( sim.metrics().total_spikes, 0u );
	}
}

TEST( Simulation, SpikeCountMatchesRaster )
{
	simulation<brunel_model> sim( brunel_model( 2000 ), {}, 2 );
	raster_recorder rec;
	sim.set_raster_sink( std::ref( rec ) );
	sim.run( 0.05 );
	EXPECT_EQ( sim.metrics().total_spikes, rec.spikes.size() );
	EXPECT_GT( rec.spikes.size(), 0u );
	for( std::size_t i = 1; i < rec.spikes.size(); i++ )
	{
		auto const & a = rec.spikes[i - 1];
		auto const & b = rec.spikes[i];
		ASSERT_TRUE( a.step < b.step || ( a.step == b.step && a.id < b.id ) );
	}
	auto const & m = sim.metrics();
	EXPECT_LE( m.neuron_ms + m.plasticity_ms + m.delivery_ms, m.wall_ms * 1.001 + 0.01 );
}

TEST( Simulation, NaivePlasticityCallsEveryPlasticSynapseEachStep )
{
	counting_params p;
	p.num_neurons = 100;
	call_counting_model const m( p );
	simulation<call_counting_model> sim( m, config( plasticity_strategy::naive, delivery_strategy::naive ), 1 );
	sim.run_steps( 50 );
	EXPECT_EQ( m.calls->load(), 50 * sim.metrics().plastic_synapses );
	EXPECT_EQ( sim.metrics().plastic_synapses, sim.metrics().synapses );
}

TEST( Simulation, IntegerModelIdenticalAcrossAllStrategies )
{
	counting_params p;
	p.num_neurons = 300;
	counting_model const m( p );
	auto const ref = run_capture( m, config( plasticity_strategy::naive, delivery_strategy::naive ), 1000 );
	for( auto pl : plasticities )
		for( auto d : deliveries )
		{
			auto const got = run_capture( m, config( pl, d ), 1000 );
			EXPECT_EQ( got.first, ref.first ) << to_string( pl ) << "/" << to_string( d );
			EXPECT_EQ( got.second, ref.second ) << to_string( pl ) << "/" << to_string( d );
		}
}

TEST( Simulation, PlasticFloatModelIdenticalAcrossAllStrategies )
{
	brunel_plus_model const m( 2000 );
	auto const ref = run_capture( m, config( plasticity_strategy::naive, delivery_strategy::naive ), 2000 );
	ASSERT_GT( ref.first.size(), 0u );
	for( auto pl : plasticities )
		for( auto d : deliveries )
		{
			auto const got = run_capture( m, config( pl, d ), 2000 );
			EXPECT_EQ( got.first, ref.first ) << to_string( pl ) << "/" << to_string( d );
			EXPECT_EQ( got.second, ref.second ) << to_string( pl ) << "/" << to_string( d );
		}
}

TEST( Simulation, ShortHistoryStillExactWithExpiry )
{
	counting_params p;
	p.num_neurons = 200;
	p.max_gap = 200;
	p.fire_probability = 0.005;
	counting_model const m( p );
	auto c = config( plasticity_strategy::naive, delivery_strategy::sliced );
	c.history_bits = 32;
	auto const ref = run_capture( m, c, 1500 );
	for( auto pl : { plasticity_strategy::lazy, plasticity_strategy::event } )
	{
		c.plasticity = pl;
		EXPECT_EQ( run_capture( m, c, 1500 ).second, ref.second ) << to_string( pl );
	}
}

TEST( Simulation, ClampingWithoutExpiryOnlyApproximates )
{
	// Long silences: with expiry off, spikes older than the window are lost.
	counting_params p;
	p.num_neurons = 200;
	p.max_gap = 1000;
	p.fire_probability = 0.002;
	counting_model const m( p );
	auto c = config( plasticity_strategy::naive, delivery_strategy::naive );
	auto const ref = run_capture( m, c, 2000 );
	c.plasticity = plasticity_strategy::lazy;
	c.expire_stale_rows = false;
	auto const clamped = run_capture( m, c, 2000 );
	EXPECT_NE( clamped.second, ref.second );
	c.expire_stale_rows = true;
	EXPECT_EQ( run_capture( m, c, 2000 ).second, ref.second );
}

TEST( Simulation, IndependentOfWorkerCount )
{
	brunel_plus_model const m( 3000 );
	auto const one = run_capture( m, config( plasticity_strategy::event, delivery_strategy::sliced, 1 ), 1000 );
	for( int w : { 2, 3, 8 } )
	{
		auto const got = run_capture( m, config( plasticity_strategy::event, delivery_strategy::sliced, w ), 1000 );
		EXPECT_EQ( got.first, one.first ) << w;
		EXPECT_EQ( got.second, one.second ) << w;
	}
}

TEST( Simulation, SetupIsDeterministic )
{
	simulation<brunel_model> a( brunel_model( 3000 ), {}, 11 ), b( brunel_model( 3000 ), config( plasticity_strategy::lazy, delivery_strategy::naive, 4 ), 11 );
	EXPECT_EQ( a.adjacency().hash(), b.adjacency().hash() );
	simulation<brunel_model> c( brunel_model( 3000 ), {}, 12 );
	EXPECT_NE( a.adjacency().hash(), c.adjacency().hash() );
	EXPECT_GT( a.metrics().setup_ms, 0.0 );
}

TEST( Simulation, ReportsAllocationSize )
{
	using big = std::array<char, 4096>;
	try
	{
		synapse_table<big> t( 1u << 30, 1u << 12 );
		FAIL() << "allocation unexpectedly succeeded";
	}
	catch( allocation_failure const & e )
	{
		EXPECT_EQ( e.bytes(), std::size_t( 1 ) << 54 );
		EXPECT_NE( std::string( e.what() ).find( "18014398509481984" ), std::string::npos ) << e.what();
	}
}
