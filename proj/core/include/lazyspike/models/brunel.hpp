#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <type_traits>

#include <lazyspike/models/constants.hpp>
#include <lazyspike/models/model.hpp>
#include <lazyspike/models/stdp.hpp>
#include <lazyspike/random.hpp>

namespace lazyspike
{
// Current-based LIF with delta synapses. Ids are laid out as
// [drive | excitatory | inhibitory]; drive neurons fire as independent
// Poisson processes and project to the recurrent populations. With Plastic,
// drive -> excitatory synapses follow pair-based STDP.
template <bool Plastic>
class brunel_model_t
{
public:
	struct neuron
	{
		float v = 0.0f;
		std::int32_t refractory = 0;
	};
	using accumulator = float;
	struct static_synapse
	{
	};
	using synapse = std::conditional_t<Plastic, stdp_synapse, static_synapse>;
	static constexpr bool step_decomposable = true;

	explicit brunel_model_t( std::uint32_t num_neurons, brunel_params const & p = {} );
	static std::uint32_t neurons_for_synapses( double synapses, brunel_params const & p = {} );

	std::string_view name() const { return Plastic ? "brunel+" : "brunel"; }
	brunel_params const & params() const { return _p; }
	std::uint32_t num_neurons() const { return _n; }
	id_range drive() const { return { 0, _drive_end }; }
	id_range excitatory() const { return { _drive_end, _exc_end }; }
	id_range inhibitory() const { return { _exc_end, _n }; }
	double drive_rate_hz() const { return _drive_rate_hz; }
	float w_exc() const { return _w_exc; }
	float w_inh() const { return _w_inh; }
	stdp_rule const & stdp() const { return _stdp; }

	graph_spec graph( std::uint64_t seed ) const;
	int delay_steps() const { return _delay; }
	double dt_ms() const { return _p.dt_ms; }

	neuron init_neuron( neuron_id id, std::uint64_t seed ) const;

	synapse init_synapse( neuron_id src, neuron_id ) const
	{
		if constexpr( Plastic )
			return { .w = src < _exc_end ? _w_exc : _w_inh };
		else
			return {};
	}

	bool update_neuron( neuron & n, accumulator const & in, neuron_id id, step_context ctx ) const
	{
		if( id < _drive_end ) return uniform_at( ctx.seed, id, std::uint64_t( ctx.step ) ) < _drive_p;

		if( n.refractory > 0 )
		{
			n.refractory--;
			return false;
		}
		n.v = n.v * _decay + in;
		if( std::abs( n.v ) < 1e-30f ) n.v = 0.0f;  // keep a silent membrane out of denormals
		if( n.v >= _v_thresh )
		{
			n.v = _v_reset;
			n.refractory = _refractory;
			return true;
		}
		return false;
	}

	void update_synapse( synapse & s, bool pre, bool post, int n ) const
	{
		if constexpr( Plastic ) _stdp.update( s, pre, post, n );
	}

	void deliver( synapse const & s, neuron_id src, accumulator & dst ) const
	{
		if constexpr( Plastic )
			dst += s.w;
		else
			dst += src < _exc_end ? _w_exc : _w_inh;
	}

	id_range plastic_targets( neuron_id src ) const
	{
		if constexpr( Plastic )
			return src < _drive_end ? excitatory() : id_range{};
		else
			return {};
	}

private:
	brunel_params _p;
	std::uint32_t _n;
	std::uint32_t _drive_end;
	std::uint32_t _exc_end;
	int _delay;
	std::int32_t _refractory;
	double _drive_rate_hz;
	double _drive_p;
	float _decay, _v_thresh, _v_reset, _w_exc, _w_inh;
	stdp_rule _stdp;
};

using brunel_model = brunel_model_t<false>;
using brunel_plus_model = brunel_model_t<true>;

extern template class brunel_model_t<false>;
extern template class brunel_model_t<true>;

static_assert( snn_model<brunel_model> );
static_assert( snn_model<brunel_plus_model> );
} // namespace lazyspike
