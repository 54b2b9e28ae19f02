#include <lazyspike/error.hpp>
#include <lazyspike/history.hpp>

#include <algorithm>

namespace lazyspike
{
firing_history::firing_history( std::uint32_t num_neurons, int history_bits )
    : _bits( history_bits )
    , _words( num_neurons, 0 )
{
	if( history_bits != 32 && history_bits != 64 ) throw_invalid( "history bits must be 32 or 64" );
}

spike_ring::spike_ring( int delay )
    : _delay( delay )
{
	if( delay < 0 ) throw_invalid( "delay must be >= 0" );
	_slots.resize( std::size_t( delay ) + 1 );
	_slot_step.assign( std::size_t( delay ) + 1, -1 );
}

std::vector<neuron_id> & spike_ring::slot_for_write( step_t step )
{
	auto const s = std::size_t( step % ( _delay + 1 ) );
	_slot_step[s] = step;
	_slots[s].clear();
	return _slots[s];
}

void spike_ring::record( step_t step, std::span<neuron_id const> fired )
{
	auto & slot = slot_for_write( step );
	slot.assign( fired.begin(), fired.end() );
}

std::span<neuron_id const> spike_ring::fired_at( step_t step ) const
{
	if( step < 0 ) return {};
	auto const s = std::size_t( step % ( _delay + 1 ) );
	if( _slot_step[s] != step ) return {};
	return _slots[s];
}

std::span<neuron_id const> spike_ring::arrivals( step_t now ) const { return fired_at( now - _delay ); }
} // namespace lazyspike
