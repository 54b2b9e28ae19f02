#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace lazyspike
{
// Weight plus two exponential traces. A trace is stored as its value right
// after the last spike (`*_trace`) and the number of steps since (`*_age`);
// its current value is trace * exp(-age * dt / tau). Advancing time is then
// integer addition, so skipping n steps at once is bit-identical to n single
// steps and every replay strategy produces the same floats.
struct stdp_synapse
{
	float w = 0.0f;
	float pre_trace = 0.0f;
	float post_trace = 0.0f;
	std::uint16_t pre_age = 0;
	std::uint16_t post_age = 0;

	friend bool operator==( stdp_synapse const &, stdp_synapse const & ) = default;
};
static_assert( sizeof( stdp_synapse ) == 16 );

// Pair-based additive STDP with hard bounds [0, w_max].
class stdp_rule
{
public:
	// Ages saturate here; the trace is treated as fully decayed.
	static constexpr int max_age = 4095;

	stdp_rule() = default;
	stdp_rule( double dt_ms, double tau_plus_ms, double tau_minus_ms, float eta_plus, float eta_minus, float w_max )
	    : _eta_plus( eta_plus )
	    , _eta_minus( eta_minus )
	    , _w_max( w_max )
	    , _pre_decay( decay_table( dt_ms, tau_plus_ms ) )
	    , _post_decay( decay_table( dt_ms, tau_minus_ms ) )
	{
	}

	float eta_plus() const { return _eta_plus; }
	float eta_minus() const { return _eta_minus; }
	float w_max() const { return _w_max; }

	float pre_trace( stdp_synapse const & s ) const { return s.pre_trace * _pre_decay[s.pre_age]; }
	float post_trace( stdp_synapse const & s ) const { return s.post_trace * _post_decay[s.post_age]; }

	// n-1 silent steps, then one step with the given spikes: traces decay,
	// a post spike potentiates by eta+ * x_pre, a pre spike depresses by
	// eta- * x_post.
	void update( stdp_synapse & s, bool pre, bool post, int n ) const
	{
		s.pre_age = advance( s.pre_age, n );
		s.post_age = advance( s.post_age, n );
		if( post )
		{
			s.w = std::min( _w_max, s.w + _eta_plus * pre_trace( s ) );
			s.post_trace = post_trace( s ) + 1.0f;
			s.post_age = 0;
		}
		if( pre )
		{
			s.w = std::max( 0.0f, s.w - _eta_minus * post_trace( s ) );
			s.pre_trace = pre_trace( s ) + 1.0f;
			s.pre_age = 0;
		}
	}

private:
	static std::uint16_t advance( std::uint16_t age, int n )
	{
		return std::uint16_t( std::min( int( age ) + n, max_age ) );
	}

	static std::vector<float> decay_table( double dt_ms, double tau_ms )
	{
		std::vector<float> t( max_age + 1 );
		for( int i = 0; i < max_age; i++ ) t[i] = float( std::exp( -i * dt_ms / tau_ms ) );
		t[max_age] = 0.0f;
		return t;
	}

	float _eta_plus = 0.0f;
	float _eta_minus = 0.0f;
	float _w_max = 0.0f;
	std::vector<float> _pre_decay;
	std::vector<float> _post_decay;
};
} // namespace lazyspike
