#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <new>
#include <span>
#include <string>
#include <vector>

#include <lazyspike/delivery.hpp>
#include <lazyspike/error.hpp>
#include <lazyspike/graph.hpp>
#include <lazyspike/history.hpp>
#include <lazyspike/models/model.hpp>
#include <lazyspike/parallel.hpp>
#include <lazyspike/plasticity.hpp>
#include <lazyspike/types.hpp>

namespace lazyspike
{
struct strategy_config
{
	plasticity_strategy plasticity = plasticity_strategy::event;
	delivery_strategy delivery = delivery_strategy::sliced;
	std::uint32_t chunk_size = 1024;
	int history_bits = 64;
	int workers = 1;  // 0 = all hardware threads
	// Replay rows that have gone history_bits steps without an arrival, so no
	// replay ever needs more history than the bitfield holds. Without it,
	// older post-synaptic spikes are dropped and lazy/event only approximate
	// naive plasticity.
	bool expire_stale_rows = true;

	void validate() const;
};

struct sim_clock
{
	step_t now = 0;
	double dt_ms = 0.1;
	int delay = 1;

	double bio_seconds() const { return double( now ) * dt_ms * 1e-3; }
};

struct run_metrics
{
	double setup_ms = 0.0;
	double wall_ms = 0.0;
	double neuron_ms = 0.0;
	double plasticity_ms = 0.0;
	double delivery_ms = 0.0;
	std::uint64_t steps = 0;
	std::uint64_t total_spikes = 0;
	std::uint64_t synapses = 0;
	std::uint64_t plastic_synapses = 0;
};

using raster_sink = std::function<void( step_t, std::span<neuron_id const> )>;

namespace detail
{
using clock = std::chrono::steady_clock;
inline double ms_since( clock::time_point t0 )
{
	return std::chrono::duration<double, std::milli>( clock::now() - t0 ).count();
}
} // namespace detail

// A constructed network plus the per-step pipeline:
//   1. neurons consume their input, fire, push histories, record the ring
//   2. plasticity: naive sweep, or lazy/event replay of arriving rows
//   3. deliver arriving spikes into next step's input
// `Mask` selects the replay window for event-driven plasticity; tests swap it
// for a faulty one to check that the equivalence suite notices.
template <snn_model Model, class Mask = recent_mask_fn>
class simulation
{
public:
	using neuron = typename Model::neuron;
	using accumulator = typename Model::accumulator;
	using synapse = typename Model::synapse;

	simulation( Model model, strategy_config cfg, std::uint64_t seed )
	    : _model( std::move( model ) )
	    , _cfg( cfg )
	    , _seed( seed )
	{
		_cfg.validate();
		_cfg.workers = resolve_workers( _cfg.workers );
		auto const t0 = detail::clock::now();
		setup();
		_metrics.setup_ms = detail::ms_since( t0 );
	}

	Model const & model() const { return _model; }
	strategy_config const & config() const { return _cfg; }
	sim_clock const & clock() const { return _clock; }
	std::uint64_t seed() const { return _seed; }

	adjacency_list const & adjacency() const { return _adj; }
	pivot_table const & pivots() const { return _pivots; }
	synapse_table<synapse> const & synapses() const { return _syn; }
	std::span<neuron const> neurons() const { return _neurons; }
	std::span<accumulator const> accumulators() const { return _acc; }
	firing_history const & history() const { return _hist; }
	spike_ring const & ring() const { return _ring; }
	age_table const & ages() const { return _ages; }
	std::span<column_range const> plastic_columns() const { return _plastic_cols; }
	run_metrics const & metrics() const { return _metrics; }

	void set_raster_sink( raster_sink sink ) { _sink = std::move( sink ); }

	void step()
	{
		step_t const now = _clock.now;

		auto t = detail::clock::now();
		update_neurons( now );
		_metrics.neuron_ms += detail::ms_since( t );

		auto const arrivals = _ring.arrivals( now );

		t = detail::clock::now();
		update_plasticity( now, arrivals );
		_metrics.plasticity_ms += detail::ms_since( t );

		t = detail::clock::now();
		if( _cfg.delivery == delivery_strategy::naive )
			deliver_naive( arrivals, _adj, _syn, std::span<accumulator>( _acc ), deliver_fn() );
		else
			deliver_sliced( arrivals, _adj, _pivots, _syn, std::span<accumulator>( _acc ), _cfg.workers,
			                deliver_fn() );
		_metrics.delivery_ms += detail::ms_since( t );

		_clock.now++;
		_metrics.steps++;
	}

	// Brings every stale plastic row up to the last completed step without a
	// pre-synaptic event. Observationally a no-op; afterwards the synapse
	// table equals what naive plasticity would hold.
	void finalize()
	{
		if( _cfg.plasticity == plasticity_strategy::naive ) return;
		step_t const last = _clock.now - 1;
		if( last < 0 ) return;
		parallel_for_dynamic( _adj.num_neurons(), _cfg.workers, [&]( std::int64_t i ) {
			auto const src = neuron_id( i );
			if( _plastic_cols[src].empty() || _ages.last_update( src ) >= last ) return;
			replay_row( src, _ages.age( src, last, _cfg.history_bits ), false );
			_ages.touch( src, last );
		} );
		for( auto & b : _due ) b.clear();
	}

	void run_steps( step_t steps )
	{
		auto const t0 = detail::clock::now();
		for( step_t i = 0; i < steps; i++ ) step();
		auto const tf = detail::clock::now();
		finalize();
		_metrics.plasticity_ms += detail::ms_since( tf );
		_metrics.wall_ms += detail::ms_since( t0 );
	}

	step_t steps_for( double duration_s ) const
	{
		if( !( duration_s >= 0.0 ) ) throw_invalid( "duration must be >= 0" );
		return step_t( std::llround( duration_s * 1e3 / _model.dt_ms() ) );
	}

	run_metrics const & run( double duration_s )
	{
		run_steps( steps_for( duration_s ) );
		return _metrics;
	}

private:
	struct deliver_callback
	{
		Model const * model;
		void operator()( synapse const & s, neuron_id src, accumulator & dst ) const
		{
			model->deliver( s, src, dst );
		}
	};
	deliver_callback deliver_fn() const { return { &_model }; }

	template <class T>
	static void allocate( std::vector<T> & v, std::size_t n, char const * what, T const & value = T{} )
	{
		try
		{
			v.assign( n, value );
		}
		catch( std::bad_alloc const & )
		{
			throw allocation_failure( what, n * sizeof( T ) );
		}
	}

	void setup()
	{
		graph_spec const spec = _model.graph( _seed );
		auto [adj, syn] = build_graph<synapse>(
		    spec, [&]( neuron_id s, neuron_id d ) { return _model.init_synapse( s, d ); }, _cfg.workers );
		_adj = std::move( adj );
		_syn = std::move( syn );
		std::uint32_t const n = _adj.num_neurons();

		if( _cfg.delivery == delivery_strategy::sliced )
			_pivots = compute_pivots( _adj, _cfg.chunk_size, false, _cfg.workers );

		allocate( _neurons, n, "neuron state" );
		allocate( _acc, n, "input accumulators" );
		parallel_for( n, _cfg.workers, [&]( std::int64_t i ) { _neurons[i] = _model.init_neuron( neuron_id( i ), _seed ); } );

		_hist = firing_history( n, _cfg.history_bits );
		_ring = spike_ring( _model.delay_steps() );
		_ages = age_table( n );
		_clock = { 0, _model.dt_ms(), _model.delay_steps() };

		allocate( _plastic_cols, n, "plastic column ranges" );
		std::uint64_t plastic = 0;
		for( neuron_id i = 0; i < n; i++ )
		{
			id_range const targets = _model.plastic_targets( i );
			if( targets.empty() ) continue;
			auto const nbrs = _adj.neighbors( i );
			auto const lo = std::lower_bound( nbrs.begin(), nbrs.end(), targets.first );
			auto const hi = std::lower_bound( lo, nbrs.end(), targets.last );
			_plastic_cols[i] = { std::uint32_t( lo - nbrs.begin() ), std::uint32_t( hi - nbrs.begin() ) };
			plastic += _plastic_cols[i].size();
		}

		allocate( _arriving, n, "arrival flags" );
		_due.assign( std::size_t( _cfg.history_bits ), {} );
		if( _cfg.plasticity != plasticity_strategy::naive && _cfg.expire_stale_rows )
		{
			// Rows start as if last updated at step -1.
			auto & initial = _due[std::size_t( _cfg.history_bits - 1 )];
			for( neuron_id i = 0; i < n; i++ )
				if( !_plastic_cols[i].empty() ) initial.push_back( i );
		}

		std::size_t const chunks = std::clamp<std::size_t>( n / 2048, 1, 256 );
		_fired_chunks.assign( chunks, {} );

		_metrics.synapses = _adj.num_synapses();
		_metrics.plastic_synapses = plastic;
	}

	void update_neurons( step_t now )
	{
		std::uint32_t const n = _adj.num_neurons();
		block_partition const part{ n, _fired_chunks.size() };
		step_context const ctx{ _seed, now };

		parallel_for( std::int64_t( part.chunks ), _cfg.workers, [&]( std::int64_t k ) {
			auto & fired = _fired_chunks[k];
			fired.clear();
			for( std::size_t i = part.begin( k ); i < part.end( k ); i++ )
			{
				auto const id = neuron_id( i );
				bool const f = _model.update_neuron( _neurons[i], _acc[i], id, ctx );
				_acc[i] = accumulator{};
				_hist.push( id, f );
				if( f ) fired.push_back( id );
			}
		} );

		auto & slot = _ring.slot_for_write( now );
		for( auto const & f : _fired_chunks ) slot.insert( slot.end(), f.begin(), f.end() );
		_metrics.total_spikes += slot.size();
		if( _sink ) _sink( now, slot );
	}

	void replay_row( neuron_id src, int age, bool pre_last )
	{
		synapse_updater<Model> const update{ &_model };
		if( _cfg.plasticity == plasticity_strategy::lazy )
			lazy_replay_row( _adj, _syn, _hist, src, _plastic_cols[src], age, pre_last, update );
		else
			event_replay_row( _adj, _syn, _hist, src, _plastic_cols[src], age, pre_last, update, Mask{} );
	}

	void update_plasticity( step_t now, std::span<neuron_id const> arrivals )
	{
		if( _metrics.plastic_synapses == 0 ) return;

		if( _cfg.plasticity == plasticity_strategy::naive )
		{
			for( neuron_id const src : arrivals ) _arriving[src] = 1;
			naive_step( _adj, _syn, _hist, std::span<column_range const>( _plastic_cols ),
			            std::span<std::uint8_t const>( _arriving ), _cfg.workers, synapse_updater<Model>{ &_model } );
			for( neuron_id const src : arrivals ) _arriving[src] = 0;
			return;
		}

		int const h = _cfg.history_bits;
		parallel_for_dynamic( std::int64_t( arrivals.size() ), _cfg.workers, [&]( std::int64_t i ) {
			neuron_id const src = arrivals[i];
			if( _plastic_cols[src].empty() ) return;
			replay_row( src, _ages.age( src, now, h ), true );
			_ages.touch( src, now );
		} );

		if( !_cfg.expire_stale_rows ) return;

		auto & bucket = _due[std::size_t( now % h )];
		_expiring.swap( bucket );
		bucket.clear();
		for( neuron_id const src : arrivals )
			if( !_plastic_cols[src].empty() ) bucket.push_back( src );

		// Rows untouched for exactly h steps; anything re-touched since is stale.
		std::erase_if( _expiring, [&]( neuron_id src ) { return _ages.last_update( src ) != now - h; } );
		parallel_for_dynamic( std::int64_t( _expiring.size() ), _cfg.workers, [&]( std::int64_t i ) {
			neuron_id const src = _expiring[i];
			replay_row( src, h, false );
			_ages.touch( src, now );
		} );
		bucket.insert( bucket.end(), _expiring.begin(), _expiring.end() );
	}

	Model _model;
	strategy_config _cfg;
	std::uint64_t _seed;
	sim_clock _clock;
	run_metrics _metrics;
	raster_sink _sink;

	adjacency_list _adj;
	pivot_table _pivots;
	synapse_table<synapse> _syn;
	std::vector<neuron> _neurons;
	std::vector<accumulator> _acc;
	firing_history _hist;
	spike_ring _ring;
	age_table _ages;

	std::vector<column_range> _plastic_cols;
	std::vector<std::uint8_t> _arriving;
	std::vector<std::vector<neuron_id>> _due;
	std::vector<neuron_id> _expiring;
	std::vector<std::vector<neuron_id>> _fired_chunks;
};
} // namespace lazyspike
