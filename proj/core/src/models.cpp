#include <lazyspike/error.hpp>
#include <lazyspike/models/brunel.hpp>
#include <lazyspike/models/vogels.hpp>
#include <lazyspike/random.hpp>

#include <algorithm>
#include <cmath>

namespace lazyspike
{
double weight_scaling( double base_weight, double base_indegree, double actual_indegree )
{
	if( !( base_indegree > 0.0 ) || !( actual_indegree > 0.0 ) )
		throw_invalid( "weight scaling needs positive in-degrees" );
	return base_weight * ( base_indegree / actual_indegree );
}

namespace
{
int steps_of( double ms, double dt_ms ) { return int( std::lround( ms / dt_ms ) ); }

void check_dt( double dt_ms )
{
	if( !( dt_ms > 0.0 ) ) throw_invalid( "dt must be positive" );
}

// Solves p * n * (n - 1) * target_fraction = synapses for n.
std::uint32_t solve_neurons( double synapses, double p, double target_fraction )
{
	if( !( synapses > 0.0 ) ) throw_invalid( "synapse count must be positive" );
	if( !( p > 0.0 ) ) throw_invalid( "connection probability must be positive" );
	double const a = p * target_fraction;
	double const n = 0.5 + std::sqrt( 0.25 + synapses / a );
	if( n >= 4.0e9 ) throw_invalid( "synapse count too large" );
	return std::uint32_t( std::llround( n ) );
}
} // namespace

vogels_model::vogels_model( std::uint32_t num_neurons, vogels_params const & p )
    : _p( p )
    , _n( num_neurons )
{
	check_dt( p.dt_ms );
	_exc = std::uint32_t( std::lround( p.exc_fraction * num_neurons ) );
	if( _exc == 0 || _exc >= _n ) throw_invalid( "vogels: a population rounds to zero neurons" );

	_delay = std::max( 1, steps_of( p.delay_ms, p.dt_ms ) );
	_refractory = steps_of( p.refractory_ms, p.dt_ms );
	_dt_over_tau = float( p.dt_ms / p.tau_m_ms );
	_v_rest = float( p.v_rest_mV );
	_v_reset = float( p.v_reset_mV );
	_v_thresh = float( p.v_thresh_mV );
	_e_exc = float( p.e_exc_mV );
	_e_inh = float( p.e_inh_mV );
	_ge_decay = float( std::exp( -p.dt_ms / p.tau_exc_ms ) );
	_gi_decay = float( std::exp( -p.dt_ms / p.tau_inh_ms ) );

	double const base_indegree = p.connection_p * p.base_neurons;
	double const indegree = p.connection_p * num_neurons;
	_w_exc = float( weight_scaling( p.w_exc, base_indegree, indegree ) );
	_w_inh = float( weight_scaling( p.w_inh, base_indegree, indegree ) );
}

std::uint32_t vogels_model::neurons_for_synapses( double synapses, vogels_params const & p )
{
	return solve_neurons( synapses, p.connection_p, 1.0 );
}

graph_spec vogels_model::graph( std::uint64_t seed ) const
{
	graph_spec g;
	g.populations = { { "exc", _exc }, { "inh", _n - _exc } };
	double const p = _p.connection_p;
	g.connections = { { 0, 0, p }, { 0, 1, p }, { 1, 0, p }, { 1, 1, p } };
	g.seed = seed;
	return g;
}

vogels_model::neuron vogels_model::init_neuron( neuron_id id, std::uint64_t seed ) const
{
	std::uint64_t const stream = hash_key( seed, 0x766f67656c73ull );
	neuron n;
	n.v = float( _p.v_reset_mV + uniform_at( stream, id, 0 ) * ( _p.v_thresh_mV - _p.v_reset_mV ) );
	n.ge = float( std::max( 0.0, _p.init_ge_mean + _p.init_ge_sd * normal_at( stream, id, 1 ) ) );
	n.gi = float( std::max( 0.0, _p.init_gi_mean + _p.init_gi_sd * normal_at( stream, id, 2 ) ) );
	return n;
}

template <bool Plastic>
brunel_model_t<Plastic>::brunel_model_t( std::uint32_t num_neurons, brunel_params const & p )
    : _p( p )
    , _n( num_neurons )
{
	check_dt( p.dt_ms );
	auto const drive = std::uint32_t( std::lround( p.drive_fraction * num_neurons ) );
	auto const exc = std::uint32_t( std::lround( p.exc_fraction * num_neurons ) );
	if( drive == 0 || exc == 0 || std::uint64_t( drive ) + exc >= num_neurons )
		throw_invalid( "brunel: a population rounds to zero neurons" );
	_drive_end = drive;
	_exc_end = drive + exc;

	_delay = std::max( 1, steps_of( p.delay_ms, p.dt_ms ) );
	_refractory = steps_of( p.refractory_ms, p.dt_ms );
	_decay = float( std::exp( -p.dt_ms / p.tau_m_ms ) );
	_v_thresh = float( p.v_thresh_mV );
	_v_reset = float( p.v_reset_mV );

	// Every recurrent neuron draws inputs from all N neurons with the same p.
	double const scale = weight_scaling( 1.0, p.connection_p * p.base_neurons, p.connection_p * num_neurons );
	_w_exc = float( p.j_mV * scale );
	_w_inh = float( -p.g * p.j_mV * scale );

	// Mean drive input = nu_ext_ratio * threshold, as in the reference model
	// where the external rate is given relative to the threshold rate.
	double const drive_indegree_base = p.connection_p * p.drive_fraction * p.base_neurons;
	_drive_rate_hz = p.nu_ext_ratio * p.v_thresh_mV / ( p.j_mV * drive_indegree_base * p.tau_m_ms * 1e-3 );
	_drive_p = _drive_rate_hz * p.dt_ms * 1e-3;

	if constexpr( Plastic )
	{
		float const eta_minus = float( p.stdp_eta_minus * _w_exc );
		_stdp = stdp_rule( p.dt_ms, p.stdp_tau_plus_ms, p.stdp_tau_minus_ms, float( p.stdp_asymmetry * eta_minus ),
		                   eta_minus, float( p.stdp_w_max * _w_exc ) );
	}
}

template <bool Plastic>
std::uint32_t brunel_model_t<Plastic>::neurons_for_synapses( double synapses, brunel_params const & p )
{
	return solve_neurons( synapses, p.connection_p, 1.0 - p.drive_fraction );
}

template <bool Plastic>
graph_spec brunel_model_t<Plastic>::graph( std::uint64_t seed ) const
{
	graph_spec g;
	g.populations = { { "drive", _drive_end }, { "exc", _exc_end - _drive_end }, { "inh", _n - _exc_end } };
	double const p = _p.connection_p;
	for( std::size_t src = 0; src < 3; src++ )
		for( std::size_t dst = 1; dst < 3; dst++ ) g.connections.push_back( { src, dst, p } );
	g.seed = seed;
	return g;
}

template <bool Plastic>
typename brunel_model_t<Plastic>::neuron brunel_model_t<Plastic>::init_neuron( neuron_id id,
                                                                               std::uint64_t seed ) const
{
	neuron n;
	if( id >= _drive_end )
		n.v = float( _p.v_reset_mV +
		             uniform_at( hash_key( seed, 0x6272756eull ), id, 0 ) * ( _p.v_thresh_mV - _p.v_reset_mV ) );
	return n;
}

template class brunel_model_t<false>;
template class brunel_model_t<true>;
} // namespace lazyspike
