#pragma once

#include <cstdint>
#include <string_view>

#include <lazyspike/models/constants.hpp>
#include <lazyspike/models/model.hpp>

namespace lazyspike
{
// Conductance-based LIF, 4:1 excitatory:inhibitory, static synapses whose
// weight depends only on the source population.
class vogels_model
{
public:
	struct neuron
	{
		float v = 0.0f;
		float ge = 0.0f;
		float gi = 0.0f;
		std::int32_t refractory = 0;
	};
	struct accumulator
	{
		float ge = 0.0f;
		float gi = 0.0f;
	};
	struct synapse
	{
	};
	static constexpr bool step_decomposable = true;

	explicit vogels_model( std::uint32_t num_neurons, vogels_params const & p = {} );
	static std::uint32_t neurons_for_synapses( double synapses, vogels_params const & p = {} );

	std::string_view name() const { return "vogels"; }
	vogels_params const & params() const { return _p; }
	std::uint32_t num_neurons() const { return _n; }
	id_range excitatory() const { return { 0, _exc }; }
	id_range inhibitory() const { return { _exc, _n }; }
	float w_exc() const { return _w_exc; }
	float w_inh() const { return _w_inh; }

	graph_spec graph( std::uint64_t seed ) const;
	int delay_steps() const { return _delay; }
	double dt_ms() const { return _p.dt_ms; }

	neuron init_neuron( neuron_id id, std::uint64_t seed ) const;
	synapse init_synapse( neuron_id, neuron_id ) const { return {}; }

	bool update_neuron( neuron & n, accumulator const & in, neuron_id, step_context ) const
	{
		n.ge += in.ge;
		n.gi += in.gi;
		bool fired = false;
		if( n.refractory > 0 )
		{
			n.refractory--;
			n.v = _v_reset;
		}
		else
		{
			n.v += _dt_over_tau * ( ( _v_rest - n.v ) + n.ge * ( _e_exc - n.v ) + n.gi * ( _e_inh - n.v ) );
			if( n.v > _v_thresh )
			{
				n.v = _v_reset;
				n.refractory = _refractory;
				fired = true;
			}
		}
		n.ge = flush( n.ge * _ge_decay );
		n.gi = flush( n.gi * _gi_decay );
		return fired;
	}

	void update_synapse( synapse &, bool, bool, int ) const {}

	void deliver( synapse const &, neuron_id src, accumulator & dst ) const
	{
		if( src < _exc )
			dst.ge += _w_exc;
		else
			dst.gi += _w_inh;
	}

	id_range plastic_targets( neuron_id ) const { return {}; }

private:
	// Decayed-out conductances would otherwise sink into denormals.
	static float flush( float g ) { return g < 1e-30f ? 0.0f : g; }

	vogels_params _p;
	std::uint32_t _n;
	std::uint32_t _exc;
	int _delay;
	std::int32_t _refractory;
	float _dt_over_tau, _v_rest, _v_reset, _v_thresh, _e_exc, _e_inh, _ge_decay, _gi_decay, _w_exc, _w_inh;
};

static_assert( snn_model<vogels_model> );
} // namespace lazyspike
