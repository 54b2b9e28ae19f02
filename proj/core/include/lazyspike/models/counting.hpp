#pragma once

#include <cstdint>
#include <string_view>

#include <lazyspike/models/constants.hpp>
#include <lazyspike/models/model.hpp>
#include <lazyspike/random.hpp>

namespace lazyspike
{
// Integer-only model for exact cross-strategy checks. Every synapse is
// plastic and accumulates, per step, pre*P + post*Q + 1, so its value is an
// exact function of the step events it has seen. Neurons fire from a
// counter-based drive, from enough input, or after max_gap silent steps
// (which bounds replay ages).
class counting_model
{
public:
	struct neuron
	{
		std::int32_t silent_steps = 0;
	};
	using accumulator = std::int64_t;
	struct synapse
	{
		std::int64_t count = 0;

		friend bool operator==( synapse const &, synapse const & ) = default;
	};
	static constexpr bool step_decomposable = true;

	explicit counting_model( counting_params const & p = {} ) : _p( p ) {}

	std::string_view name() const { return "counting"; }
	counting_params const & params() const { return _p; }
	std::uint32_t num_neurons() const { return _p.num_neurons; }

	graph_spec graph( std::uint64_t seed ) const
	{
		graph_spec g;
		g.populations = { { "all", _p.num_neurons } };
		g.connections = { { 0, 0, _p.connection_p } };
		g.seed = seed;
		return g;
	}
	int delay_steps() const { return _p.delay_steps; }
	double dt_ms() const { return 0.1; }

	neuron init_neuron( neuron_id, std::uint64_t ) const { return {}; }
	synapse init_synapse( neuron_id, neuron_id ) const { return {}; }

	bool update_neuron( neuron & n, accumulator const & in, neuron_id id, step_context ctx ) const
	{
		bool const fired = uniform_at( ctx.seed, id, std::uint64_t( ctx.step ) ) < _p.fire_probability ||
		                   n.silent_steps + 1 >= _p.max_gap || in >= _p.input_threshold;
		n.silent_steps = fired ? 0 : n.silent_steps + 1;
		return fired;
	}

	void update_synapse( synapse & s, bool pre, bool post, int n ) const
	{
		s.count += n + ( pre ? _p.pre_code : 0 ) + ( post ? _p.post_code : 0 );
	}

	static std::int64_t weight( synapse const & s ) { return 1 + ( s.count & 3 ); }

	void deliver( synapse const & s, neuron_id, accumulator & dst ) const { dst += weight( s ); }

	id_range plastic_targets( neuron_id ) const { return { 0, _p.num_neurons }; }

private:
	counting_params _p;
};

static_assert( snn_model<counting_model> );
} // namespace lazyspike
