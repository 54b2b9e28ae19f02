#include "verify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <lazyspike/delivery.hpp>
#include <lazyspike/engine.hpp>
#include <lazyspike/history.hpp>
#include <lazyspike/models/brunel.hpp>
#include <lazyspike/models/counting.hpp>
#include <lazyspike/models/stdp.hpp>
#include <lazyspike/models/vogels.hpp>
#include <lazyspike/plasticity.hpp>
#include <lazyspike/raster.hpp>

#include "oracles.hpp"

namespace lazyspike::verify
{
namespace
{
constexpr std::array<std::string_view, 7> modules = { "pivots", "bits", "history", "plasticity",
                                                       "delivery", "models", "engine" };

// Runs `body`, which fills in `passed` and `detail`, and stamps name, seed
// and elapsed time.
check_result timed( std::string name, std::uint64_t seed, std::function<void( check_result & )> const & body )
{
	check_result r{ std::move( name ), true, {}, seed, 0.0 };
	auto const t0 = std::chrono::steady_clock::now();
	try
	{
		body( r );
	}
	catch( std::exception const & e )
	{
		r.passed = false;
		r.detail = std::string( "exception: " ) + e.what();
	}
	r.ms = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - t0 ).count();
	return r;
}

void fail( check_result & r, std::string msg )
{
	if( r.passed ) r.detail = std::move( msg );
	r.passed = false;
}

std::string raster_text( std::vector<spike> const & spikes )
{
	std::ostringstream os;
	write_raster( os, spikes );
	return os.str();
}

// Longest stretch, in steps, any neuron went without firing (counting the
// start of the run), which bounds every replay age.
step_t max_silence( std::vector<spike> const & raster, std::uint32_t n, step_t steps )
{
	std::vector<step_t> last( n, -1 );
	step_t worst = 0;
	for( auto const & s : raster )
	{
		worst = std::max( worst, s.step - last[s.id] );
		last[s.id] = s.step;
	}
	for( auto l : last ) worst = std::max( worst, steps - 1 - l );
	return worst;
}

strategy_config make_config( plasticity_strategy p, delivery_strategy d, std::uint32_t chunk, int workers )
{
	strategy_config c;
	c.plasticity = p;
	c.delivery = d;
	c.chunk_size = chunk;
	c.workers = workers;
	return c;
}

constexpr std::array all_plasticity = { plasticity_strategy::naive, plasticity_strategy::lazy,
                                        plasticity_strategy::event };
constexpr std::array all_delivery = { delivery_strategy::naive, delivery_strategy::sliced };

template <class Model>
strategy_run<Model> run_maybe_mutated( Model const & m, strategy_config const & cfg, std::uint64_t seed, step_t steps,
                                       bool mutate )
{
	if( !mutate ) return run_with( m, cfg, seed, steps );
	auto r = run_with<Model, off_by_one_mask>( m, cfg, seed, steps );
	return { std::move( r.raster ), std::move( r.synapses ), r.metrics, r.graph_hash };
}
} // namespace

std::span<std::string_view const> module_names() { return modules; }

bool is_module( std::string_view name ) { return std::ranges::find( modules, name ) != modules.end(); }

check_result pivot_oracle( std::uint64_t seed, int graphs )
{
	return timed( "pivots match brute-force chunk counts", seed, [&]( check_result & r ) {
		std::mt19937_64 rng( seed );
		constexpr std::array probs = { 0.01, 0.1, 0.5 };
		constexpr std::array<std::uint32_t, 3> chunks = { 32, 64, 1024 };
		for( int g = 0; g < graphs && r.passed; g++ )
		{
			std::uint32_t const n = std::uniform_int_distribution<std::uint32_t>( 1, 2048 )( rng );
			double const p = probs[g % 3];
			std::uint32_t const chunk = chunks[( g / 3 ) % 3];
			graph_spec spec;
			spec.populations = { { "all", n } };
			spec.connections = { { 0, 0, p } };
			spec.seed = rng();
			auto const adj = build_adjacency( spec );
			auto const pivots = compute_pivots( adj, chunk, true );
			if( !std::ranges::equal( brute_pivots( adj, chunk ), pivots.raw() ) )
			{
				fail( r, fmt::format( "graph {} (N={}, p={}, C={}, seed={}) differs", g, n, p, chunk, spec.seed ) );
				break;
			}
			// Slices partition each row: consecutive, covering [0, degree).
			for( neuron_id i = 0; i < n && r.passed; i++ )
			{
				std::uint32_t expected_begin = 0;
				for( std::uint32_t k = 0; k < pivots.num_slices(); k++ )
				{
					auto const cols = row_slice( pivots, i, k );
					id_range const ids = pivots.chunk( k );
					if( cols.begin != expected_begin ) fail( r, fmt::format( "row {} slice {} not contiguous", i, k ) );
					for( std::uint32_t c = cols.begin; c < cols.end; c++ )
						if( !ids.contains( adj( i, c ) ) ) fail( r, fmt::format( "row {} column {} outside slice", i, c ) );
					expected_begin = cols.end;
				}
				if( expected_begin != adj.degree( i ) ) fail( r, fmt::format( "row {} not covered", i ) );
			}
		}
		if( r.passed ) r.detail = fmt::format( "{} graphs", graphs );
	} );
}

check_result pivot_examples()
{
	return timed( "pivots on the 9-neuron example graph", 0, [&]( check_result & r ) {
		std::vector<std::vector<neuron_id>> rows( 9 );
		rows[0] = { 0, 1, 2, 4, 6, 7 };
		rows[8] = { 1, 3, 4, 5, 6 };
		auto const adj = adjacency_list::from_rows( rows, 6 );
		auto const pv = compute_pivots( adj, 3, true );
		auto const row = [&]( neuron_id i ) { return std::vector<std::uint32_t>( pv.row( i ).begin(), pv.row( i ).end() ); };
		if( row( 0 ) != std::vector<std::uint32_t>{ 0, 3, 4, 6 } ) fail( r, "row 0 pivots" );
		if( row( 8 ) != std::vector<std::uint32_t>{ 0, 1, 4, 5 } ) fail( r, "row 8 pivots" );
		if( row( 4 ) != std::vector<std::uint32_t>{ 0, 0, 0, 0 } ) fail( r, "empty row pivots" );
	} );
}

check_result bit_oracles( std::uint64_t seed, int words )
{
	return timed( "set-bit iteration and window masks match per-bit scans", seed, [&]( check_result & r ) {
		std::mt19937_64 rng( seed );
		for( int i = 0; i < words && r.passed; i++ )
		{
			// Mix dense, sparse and single-bit words.
			bits::word x = rng();
			if( i % 3 == 1 ) x &= rng() & rng();
			if( i % 3 == 2 ) x = bits::word( 1 ) << ( rng() % 64 );
			std::vector<int> got;
			for( int s : bits::descending_set_bits( x ) ) got.push_back( s );
			if( got != scan_set_bits( x ) ) fail( r, fmt::format( "descending_set_bits({:#x})", x ) );
			int const age = int( rng() % 65 );
			auto const m = bits::recent_mask( x, age );
			if( m != per_bit_mask( x, age ) ) fail( r, fmt::format( "recent_mask({:#x}, {})", x, age ) );
			if( std::popcount( m ) > std::popcount( x ) ) fail( r, "recent_mask popcount" );
		}
		if( r.passed ) r.detail = fmt::format( "{} words", words );
	} );
}

check_result ring_consistency( std::uint64_t seed, int trials )
{
	return timed( "firing history agrees with the spike ring", seed, [&]( check_result & r ) {
		std::mt19937_64 rng( seed );
		for( int t = 0; t < trials && r.passed; t++ )
		{
			std::uint32_t const n = 1 + rng() % 16;
			int const bits_h = ( rng() & 1 ) ? 64 : 32;
			int const delay = int( rng() % 8 );
			firing_history hist( n, bits_h );
			spike_ring ring( delay );
			double const rate = double( rng() % 100 ) / 100.0;
			std::bernoulli_distribution fire( rate );
			for( step_t now = 0; now < 150 && r.passed; now++ )
			{
				std::vector<neuron_id> fired;
				for( neuron_id i = 0; i < n; i++ )
				{
					bool const f = fire( rng );
					hist.push( i, f );
					if( f ) fired.push_back( i );
				}
				ring.record( now, fired );
				for( int s = 0; s <= delay && s <= now && s < bits_h; s++ )
				{
					auto const slot = ring.fired_at( now - s );
					for( neuron_id i = 0; i < n; i++ )
					{
						bool const in_slot = std::ranges::binary_search( slot, i );
						if( bits::bit( hist[i], s ) != in_slot )
							fail( r, fmt::format( "trial {} step {} neuron {} age {}", t, now, i, s ) );
					}
				}
				auto const arr = ring.arrivals( now );
				if( now < delay ? !arr.empty() : !std::ranges::equal( arr, ring.fired_at( now - delay ) ) )
					fail( r, fmt::format( "arrivals at step {}", now ) );
			}
		}
	} );
}

check_result replay_properties( std::uint64_t seed, int replays, bool mutate )
{
	return timed( "replay step conservation, call bounds and lazy agreement", seed, [&]( check_result & r ) {
		struct call
		{
			bool pre, post;
			int n;
		};
		std::mt19937_64 rng( seed );
		sequence_model const seq;
		synapse_updater<sequence_model> const update{ &seq };
		int checked = 0;
		for( int i = 0; i < replays && r.passed; i++ )
		{
			bits::word const hist = ( i & 1 ) ? rng() : rng() & rng() & rng();
			int const age = 1 + int( rng() % 64 );
			bool const pre = ( rng() & 3 ) != 0;

			std::vector<call> calls;
			auto const record = [&]( int &, bool a, bool b, int n ) { calls.push_back( { a, b, n } ); };
			int dummy = 0;
			if( mutate )
				event_replay_synapse( dummy, hist, age, pre, record, off_by_one_mask{} );
			else
				event_replay_synapse( dummy, hist, age, pre, record );

			bits::word const window = bits::recent_mask( hist, age );
			int sum = 0, pos = age;
			for( std::size_t c = 0; c < calls.size(); c++ )
			{
				auto const & k = calls[c];
				if( k.n < 1 ) fail( r, fmt::format( "replay {}: call with n={}", i, k.n ) );
				sum += k.n;
				pos -= k.n;  // the call ends at window position `pos`
				bool const ends_on_spike = pos >= 0 && bits::bit( window, pos );
				if( k.post != ends_on_spike ) fail( r, fmt::format( "replay {}: post flag of call {}", i, c ) );
				if( k.pre != ( pre && pos == 0 ) ) fail( r, fmt::format( "replay {}: pre flag of call {}", i, c ) );
			}
			if( sum != age ) fail( r, fmt::format( "replay {}: steps sum to {} for age {}", i, sum, age ) );
			if( int( calls.size() ) > std::popcount( window ) + 1 )
				fail( r, fmt::format( "replay {}: {} calls for {} spikes", i, calls.size(), std::popcount( window ) ) );

			sequence_model::synapse lazy{ rng() }, event = lazy;
			lazy_replay_synapse( lazy, hist, age, pre, update );
			if( mutate )
				event_replay_synapse( event, hist, age, pre, update, off_by_one_mask{} );
			else
				event_replay_synapse( event, hist, age, pre, update );
			if( !( lazy == event ) ) fail( r, fmt::format( "replay {}: event differs from lazy (age {})", i, age ) );
			checked++;
		}
		if( r.passed ) r.detail = fmt::format( "{} replays", checked );
	} );
}

check_result counting_equivalence( std::uint64_t seed, step_t steps, bool mutate, int workers )
{
	return timed( "naive, lazy and event plasticity give identical tables", seed, [&]( check_result & r ) {
		counting_params p;
		p.num_neurons = 256;
		counting_model const m( p );
		std::vector<strategy_run<counting_model>> runs;
		for( auto ps : all_plasticity )
			runs.push_back(
			    run_maybe_mutated( m, make_config( ps, delivery_strategy::sliced, 64, workers ), seed, steps, mutate ) );
		step_t const silence = max_silence( runs[0].raster, p.num_neurons, steps );
		if( silence + 1 > 64 ) fail( r, fmt::format( "drive left a neuron silent for {} steps", silence ) );
		for( std::size_t k = 1; k < runs.size(); k++ )
		{
			if( runs[k].synapses != runs[0].synapses )
				fail( r, fmt::format( "{} synapse table differs from naive", to_string( all_plasticity[k] ) ) );
			if( runs[k].raster != runs[0].raster )
				fail( r, fmt::format( "{} raster differs from naive", to_string( all_plasticity[k] ) ) );
		}
		if( r.passed )
			r.detail = fmt::format( "N=256, {} steps, {} spikes, longest silence {} steps", steps,
			                        runs[0].raster.size(), silence );
	} );
}

check_result reference_equivalence( std::uint64_t seed, bool mutate, int workers )
{
	return timed( "all strategy combinations match the reference interpreter", seed, [&]( check_result & r ) {
		counting_params p;
		p.num_neurons = 64;
		p.connection_p = 0.2;
		p.fire_probability = 0.01;
		p.max_gap = 1000;  // allow silences longer than the history window
		step_t const steps = 400;
		sequence_model const m( p );
		auto const ref = reference_run( m, seed, steps );
		int combos = 0;
		for( auto ps : all_plasticity )
			for( auto ds : all_delivery )
				for( bool expire : { true, false } )
				{
					if( ps == plasticity_strategy::naive && !expire ) continue;
					auto cfg = make_config( ps, ds, 32, workers );
					cfg.expire_stale_rows = expire;
					auto const got = run_maybe_mutated( m, cfg, seed, steps, mutate );
					bool const exact = expire || ps == plasticity_strategy::naive ||
					                   max_silence( ref.raster, p.num_neurons, steps ) + 1 <= 64;
					std::string const tag =
					    fmt::format( "{}/{}{}", to_string( ps ), to_string( ds ), expire ? "" : " (no expiry)" );
					if( got.raster != ref.raster && exact ) fail( r, tag + ": raster differs" );
					if( got.synapses != ref.synapses && exact ) fail( r, tag + ": synapses differ" );
					combos++;
				}
		if( r.passed ) r.detail = fmt::format( "{} combinations, {} spikes", combos, ref.raster.size() );
	} );
}

check_result accumulator_equivalence( std::uint64_t seed, std::uint32_t neurons, std::uint32_t chunk, step_t steps,
                                      int workers )
{
	return timed( fmt::format( "sliced delivery (C={}) matches naive accumulators every step", chunk ), seed,
	              [&]( check_result & r ) {
		              counting_params p;
		              p.num_neurons = neurons;
		              p.connection_p = 0.05;
		              p.input_threshold = 1 << 20;  // drive-only firing keeps activity sparse
		              counting_model const m( p );
		              simulation<counting_model> a( m, make_config( plasticity_strategy::event, delivery_strategy::naive, chunk, workers ), seed );
		              simulation<counting_model> b( m, make_config( plasticity_strategy::event, delivery_strategy::sliced, chunk, workers ), seed );
		              std::uint64_t deliveries = 0;
		              for( step_t t = 0; t < steps && r.passed; t++ )
		              {
			              a.step();
			              b.step();
			              if( !std::ranges::equal( a.accumulators(), b.accumulators() ) )
				              fail( r, fmt::format( "accumulators differ after step {}", t ) );
			              for( auto x : a.accumulators() ) deliveries += std::uint64_t( x );
		              }
		              if( r.passed )
			              r.detail = fmt::format( "N={}, {} steps, total input {}", neurons, steps, deliveries );
	              } );
}

check_result dense_delivery_oracle( std::uint64_t seed )
{
	return timed( "both delivery strategies match a dense matrix-vector product", seed, [&]( check_result & r ) {
		std::mt19937_64 rng( seed );
		for( int trial = 0; trial < 20 && r.passed; trial++ )
		{
			std::uint32_t const n = 32 + std::uint32_t( rng() % 300 );
			graph_spec spec;
			spec.populations = { { "all", n } };
			spec.connections = { { 0, 0, 0.1 } };
			spec.seed = rng();
			auto const adj = build_adjacency( spec );
			synapse_table<std::int64_t> syn( n, adj.width() );
			for( neuron_id i = 0; i < n; i++ )
				for( std::uint32_t c = 0; c < adj.degree( i ); c++ ) syn( i, c ) = std::int64_t( rng() % 19 ) - 9;
			std::vector<neuron_id> arrivals;
			for( neuron_id i = 0; i < n; i++ )
				if( rng() % 4 == 0 ) arrivals.push_back( i );
			auto const expected =
			    dense_delivery( adj, arrivals, [&]( neuron_id i, std::uint32_t c ) { return syn( i, c ); } );
			auto const add = []( std::int64_t const & w, neuron_id, std::int64_t & acc ) { acc += w; };
			std::vector<std::int64_t> naive( n, 0 ), sliced( n, 0 );
			deliver_naive( arrivals, adj, syn, std::span( naive ), add );
			auto const pivots = compute_pivots( adj, 32 );
			deliver_sliced( arrivals, adj, pivots, syn, std::span( sliced ), 2, add );
			if( naive != expected ) fail( r, fmt::format( "trial {}: naive differs", trial ) );
			if( sliced != expected ) fail( r, fmt::format( "trial {}: sliced differs", trial ) );
		}
	} );
}

check_result brunel_delivery_rasters( std::uint64_t seed, std::uint32_t neurons, step_t steps, int workers )
{
	return timed( "Brunel rasters identical under both delivery strategies", seed, [&]( check_result & r ) {
		brunel_model const m( neurons );
		auto const a = run_with( m, make_config( plasticity_strategy::event, delivery_strategy::naive, 1024, workers ),
		                         seed, steps );
		auto const b = run_with( m, make_config( plasticity_strategy::event, delivery_strategy::sliced, 1024, workers ),
		                         seed, steps );
		if( raster_text( a.raster ) != raster_text( b.raster ) ) fail( r, "rasters differ" );
		if( a.raster.empty() ) fail( r, "network silent" );
		if( r.passed ) r.detail = fmt::format( "N={}, {} steps, {} spikes", neurons, steps, a.raster.size() );
	} );
}

check_result thread_invariance( std::uint64_t seed, std::uint32_t neurons, step_t steps,
                                std::vector<int> const & worker_counts )
{
	return timed( "rasters independent of worker count", seed, [&]( check_result & r ) {
		brunel_model const m( neurons );
		std::string first;
		for( int w : worker_counts )
		{
			auto const run = run_with(
			    m, make_config( plasticity_strategy::event, delivery_strategy::sliced, 1024, w ), seed, steps );
			auto const text = raster_text( run.raster );
			if( first.empty() )
				first = text;
			else if( text != first )
				fail( r, fmt::format( "{} workers differ from {}", w, worker_counts.front() ) );
		}
		std::string counts;
		for( int w : worker_counts ) counts += ( counts.empty() ? "" : "," ) + std::to_string( w );
		if( r.passed )
			r.detail = fmt::format( "workers {{{}}}, {} raster bytes", counts, first.size() );
	} );
}

check_result plastic_fraction( std::uint64_t seed, std::uint32_t neurons )
{
	return timed( "Brunel+ plastic synapse fraction", seed, [&]( check_result & r ) {
		simulation<brunel_plus_model> sim( brunel_plus_model( neurons ), {}, seed );
		double const frac = double( sim.metrics().plastic_synapses ) / double( sim.metrics().synapses );
		if( frac < 0.35 || frac > 0.50 ) fail( r, "" );
		r.detail = fmt::format( "{:.4f} of {} synapses", frac, sim.metrics().synapses );
	} );
}

check_result counting_decomposable()
{
	return timed( "counting synapse is exactly step-decomposable", 0, [&]( check_result & r ) {
		counting_model const m;
		for( std::int64_t start : { 0ll, 7ll, -12345ll } )
			for( int n = 1; n <= 64; n++ )
				for( int f = 0; f < 4; f++ )
				{
					bool const pre = f & 1, post = f & 2;
					counting_model::synapse a{ start }, b{ start };
					m.update_synapse( a, pre, post, n );
					for( int i = 1; i < n; i++ ) m.update_synapse( b, false, false, 1 );
					m.update_synapse( b, pre, post, 1 );
					if( !( a == b ) ) fail( r, fmt::format( "n={} pre={} post={}", n, pre, post ) );
				}
	} );
}

check_result stdp_skip_ahead( std::uint64_t seed, int trials )
{
	return timed( "STDP skip-ahead equals single steps", seed, [&]( check_result & r ) {
		std::mt19937_64 rng( seed );
		stdp_rule const rule( 0.1, 20.0, 20.0, 0.0105f, 0.01f, 2.0f );
		for( int t = 0; t < trials && r.passed; t++ )
		{
			stdp_synapse a{ 1.0f, 0.0f, 0.0f, 0, 0 };
			// Random history to reach a generic state.
			for( int k = 0; k < 20; k++ ) rule.update( a, rng() % 5 == 0, rng() % 5 == 0, 1 + int( rng() % 30 ) );
			stdp_synapse b = a;
			int const n = 1 + int( rng() % 64 );
			bool const pre = rng() & 1, post = rng() & 1;
			rule.update( a, pre, post, n );
			for( int i = 1; i < n; i++ ) rule.update( b, false, false, 1 );
			rule.update( b, pre, post, 1 );
			if( !( a == b ) ) fail( r, fmt::format( "trial {}: n={} pre={} post={}", t, n, pre, post ) );
		}
	} );
}

check_result refractory_and_bounds( std::uint64_t seed )
{
	return timed( "refractory periods and STDP weight bounds hold", seed, [&]( check_result & r ) {
		brunel_plus_model const m( 2000 );
		simulation<brunel_plus_model> sim( m, {}, seed );
		raster_recorder rec;
		sim.set_raster_sink( std::ref( rec ) );
		sim.run_steps( 3000 );
		int const refractory = int( std::lround( m.params().refractory_ms / m.params().dt_ms ) );
		std::map<neuron_id, step_t> last;
		for( auto const & s : rec.spikes )
		{
			if( s.id < m.drive().last ) continue;  // drive neurons have no refractory period
			auto const it = last.find( s.id );
			if( it != last.end() && s.step - it->second <= refractory )
				fail( r, fmt::format( "neuron {} fired at {} and {}", s.id, it->second, s.step ) );
			last[s.id] = s.step;
		}
		auto const & adj = sim.adjacency();
		float lo = 1e30f, hi = -1e30f;
		for( neuron_id i = 0; i < adj.num_neurons(); i++ )
		{
			auto const cols = sim.plastic_columns()[i];
			for( std::uint32_t c = cols.begin; c < cols.end; c++ )
			{
				float const w = sim.synapses()( i, c ).w;
				lo = std::min( lo, w );
				hi = std::max( hi, w );
			}
		}
		if( lo < 0.0f || hi > m.stdp().w_max() ) fail( r, fmt::format( "weights span [{}, {}]", lo, hi ) );
		if( r.passed ) r.detail = fmt::format( "{} spikes, weights in [{:.4g}, {:.4g}]", rec.spikes.size(), lo, hi );
	} );
}

std::vector<check_result> run_module( std::string_view module, options const & opt )
{
	std::uint64_t const s = opt.seed;
	bool const mut = opt.mutate_recent_mask;
	int const w = opt.workers;
	if( module == "pivots" ) return { pivot_examples(), pivot_oracle( s, 200 ) };
	if( module == "bits" ) return { bit_oracles( s, 100000 ) };
	if( module == "history" ) return { ring_consistency( s, 200 ) };
	if( module == "plasticity" )
		return { replay_properties( s, 100000, mut ), counting_equivalence( s, 1000, mut, w ),
		         reference_equivalence( s, mut, w ) };
	if( module == "delivery" )
		return { dense_delivery_oracle( s ), accumulator_equivalence( s, 4096, 64, 200, w ),
		         accumulator_equivalence( s, 4096, 1024, 200, w ), brunel_delivery_rasters( s, 4000, 500, w ) };
	if( module == "models" )
		return { counting_decomposable(), stdp_skip_ahead( s, 2000 ), refractory_and_bounds( s ),
		         plastic_fraction( s, 4000 ) };
	if( module == "engine" ) return { thread_invariance( s, 4000, 500, { 1, 2, 4 } ) };
	throw_invalid( "unknown module '" + std::string( module ) + "'" );
}
} // namespace lazyspike::verify
