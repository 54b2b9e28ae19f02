#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <type_traits>

#include <lazyspike/bits.hpp>
#include <lazyspike/graph.hpp>
#include <lazyspike/history.hpp>
#include <lazyspike/parallel.hpp>
#include <lazyspike/types.hpp>

namespace lazyspike
{
enum class plasticity_strategy
{
	naive,
	lazy,
	event
};

std::string_view to_string( plasticity_strategy s );
plasticity_strategy parse_plasticity( std::string_view s );

// Adapts a model's synapse callback to the engine's contract
//   update(state, pre, post, n): n-1 silent steps, then one step with flags.
// Models without a closed-form skip-ahead get n single steps instead, which
// costs event-driven replay exactly as much as lazy replay.
template <class Model>
struct synapse_updater
{
	Model const * model;

	void operator()( typename Model::synapse & s, bool pre, bool post, int n ) const
	{
		if constexpr( Model::step_decomposable )
		{
			model->update_synapse( s, pre, post, n );
		}
		else
		{
			for( int i = 1; i < n; i++ ) model->update_synapse( s, false, false, 1 );
			model->update_synapse( s, pre, post, 1 );
		}
	}
};

struct recent_mask_fn
{
	constexpr bits::word operator()( bits::word hist, int age ) const { return bits::recent_mask( hist, age ); }
};

// Replays `age` missed steps of one synapse chronologically, one call per
// step. Position s of the window is step now-s; the pre flag (if any) lands
// on the most recent step.
template <class S, class Update>
inline void lazy_replay_synapse( S & s, bits::word dst_hist, int age, bool pre_last, Update && update )
{
	for( int pos = age - 1; pos >= 0; pos-- ) update( s, pre_last && pos == 0, bits::bit( dst_hist, pos ), 1 );
}

// Same observable result as lazy_replay_synapse for step-decomposable
// updates, but with one call per post-synaptic spike in the window plus at
// most one tail call. The n arguments of all calls sum to `age`.
template <class S, class Update, class Mask = recent_mask_fn>
inline void event_replay_synapse( S & s, bits::word dst_hist, int age, bool pre_last, Update && update,
                                  Mask mask = {} )
{
	int prev = age;
	for( int pos : bits::descending_set_bits( mask( dst_hist, age ) ) )
	{
		update( s, pre_last && pos == 0, true, prev - pos );
		prev = pos;
	}
	if( prev > 0 ) update( s, pre_last, false, prev );
}

// Brings columns `cols` of row `src` up to date with a replay of `age` steps.
// Synapses are replayed in groups of `lanes` that step through the window in
// lockstep, so independent dependency chains overlap. Each synapse still sees
// its calls in chronological order.
template <class S, class Update>
void lazy_replay_row( adjacency_list const & adj, synapse_table<S> & syn, firing_history const & hist,
                      neuron_id src, column_range cols, int age, bool pre_last, Update && update )
{
	S * row = syn.row_data( src );
	auto const ids = adj.row( src );
	std::uint32_t c = cols.begin;
	if constexpr( !std::is_empty_v<S> )
	{
		constexpr std::uint32_t lanes = 4;
		for( ; c + lanes <= cols.end; c += lanes )
		{
			S s[lanes];
			bits::word h[lanes];
			for( std::uint32_t j = 0; j < lanes; j++ )
			{
				s[j] = row[c + j];
				h[j] = hist[ids[c + j]];
			}
			for( int pos = age - 1; pos >= 0; pos-- )
				for( std::uint32_t j = 0; j < lanes; j++ )
					update( s[j], pre_last && pos == 0, bits::bit( h[j], pos ), 1 );
			for( std::uint32_t j = 0; j < lanes; j++ ) row[c + j] = s[j];
		}
	}
	for( ; c < cols.end; c++ )
	{
		S s = std::is_empty_v<S> ? row[0] : row[c];
		lazy_replay_synapse( s, hist[ids[c]], age, pre_last, update );
		if constexpr( !std::is_empty_v<S> ) row[c] = s;
	}
}

template <class S, class Update, class Mask = recent_mask_fn>
void event_replay_row( adjacency_list const & adj, synapse_table<S> & syn, firing_history const & hist,
                       neuron_id src, column_range cols, int age, bool pre_last, Update && update,
                       Mask mask = {} )
{
	S * row = syn.row_data( src );
	auto const ids = adj.row( src );
	for( std::uint32_t c = cols.begin; c < cols.end; c++ )
	{
		// Replay on a register copy; the row slot may alias model state.
		S s = std::is_empty_v<S> ? row[0] : row[c];
		event_replay_synapse( s, hist[ids[c]], age, pre_last, update, mask );
		if constexpr( !std::is_empty_v<S> ) row[c] = s;
	}
}

// Advances every plastic synapse by exactly one step. `arriving[i]` flags
// rows whose source spike arrives this step (pre-synaptic event).
template <class S, class Update>
void naive_step( adjacency_list const & adj, synapse_table<S> & syn, firing_history const & hist,
                 std::span<column_range const> plastic_cols, std::span<std::uint8_t const> arriving, int workers,
                 Update && update )
{
	parallel_for( adj.num_neurons(), workers, [&]( std::int64_t i ) {
		auto const src = neuron_id( i );
		column_range const cols = plastic_cols[src];
		if( cols.empty() ) return;
		bool const pre = arriving[src] != 0;
		S * row = syn.row_data( src );
		auto const ids = adj.row( src );
		for( std::uint32_t c = cols.begin; c < cols.end; c++ )
		{
			S & s = std::is_empty_v<S> ? row[0] : row[c];
			update( s, pre, bits::bit( hist[ids[c]], 0 ), 1 );
		}
	} );
}
} // namespace lazyspike
