#pragma once

#include <concepts>
#include <cstdint>
#include <string_view>
#include <utility>

#include <lazyspike/graph.hpp>
#include <lazyspike/types.hpp>

namespace lazyspike
{
struct step_context
{
	std::uint64_t seed = 0;
	step_t step = 0;
};

// What a model plugs into the engine.
//  neuron       full per-neuron state, updated once per step
//  accumulator  input delivered during a step, consumed (and cleared) by the
//               next step's neuron update
//  synapse      per-synapse state (may be an empty type)
//  step_decomposable
//               update_synapse(s, a, b, n) == (n-1) x update_synapse(s, 0, 0, 1)
//               followed by update_synapse(s, a, b, 1)
// Callbacks must be reentrant; the engine calls them concurrently on
// disjoint state.
template <class M>
concept snn_model = requires( M const & m, typename M::neuron & n, typename M::accumulator & acc,
                              typename M::synapse & s, neuron_id id, step_context ctx, std::uint64_t seed ) {
	typename M::neuron;
	typename M::accumulator;
	typename M::synapse;
	{ M::step_decomposable } -> std::convertible_to<bool>;
	{ m.name() } -> std::convertible_to<std::string_view>;
	{ m.graph( seed ) } -> std::same_as<graph_spec>;
	{ m.delay_steps() } -> std::convertible_to<int>;
	{ m.dt_ms() } -> std::convertible_to<double>;
	{ m.init_neuron( id, seed ) } -> std::same_as<typename M::neuron>;
	{ m.init_synapse( id, id ) } -> std::same_as<typename M::synapse>;
	{ m.update_neuron( n, std::as_const( acc ), id, ctx ) } -> std::same_as<bool>;
	m.update_synapse( s, true, true, 1 );
	m.deliver( std::as_const( s ), id, acc );
	{ m.plastic_targets( id ) } -> std::same_as<id_range>;
};

// Keeps the expected total synaptic drive constant when the in-degree
// changes: w * base_indegree / actual_indegree.
double weight_scaling( double base_weight, double base_indegree, double actual_indegree );
} // namespace lazyspike
