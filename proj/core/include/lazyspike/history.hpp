#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <lazyspike/bits.hpp>
#include <lazyspike/types.hpp>

namespace lazyspike
{
// One history word per neuron; only the low `history_bits` are ever read.
class firing_history
{
public:
	firing_history() = default;
	firing_history( std::uint32_t num_neurons, int history_bits );

	int history_bits() const { return _bits; }
	std::uint32_t size() const { return std::uint32_t( _words.size() ); }

	bits::word operator[]( neuron_id i ) const { return _words[i]; }
	void push( neuron_id i, bool fired ) { _words[i] = bits::push( _words[i], fired ); }
	bits::word const * data() const { return _words.data(); }

private:
	int _bits = 64;
	std::vector<bits::word> _words;
};

// Step of the most recent plasticity update per source row. Starts at -1 so
// the first replay covers every step since the start of the run.
class age_table
{
public:
	age_table() = default;
	explicit age_table( std::uint32_t num_neurons ) : _last( num_neurons, -1 ) {}

	step_t last_update( neuron_id i ) const { return _last[i]; }
	void touch( neuron_id i, step_t now ) { _last[i] = now; }

	// Steps to replay at `now`, clamped to the history capacity. Spikes older
	// than the window are lost when the clamp is active.
	int age( neuron_id i, step_t now, int history_bits ) const
	{
		step_t const a = now - _last[i];
		return a > history_bits ? history_bits : int( a );
	}
	step_t raw_age( neuron_id i, step_t now ) const { return now - _last[i]; }

private:
	std::vector<step_t> _last;
};

// delay+1 slots of firing lists; the slot for step t is t mod (delay+1).
class spike_ring
{
public:
	spike_ring() = default;
	explicit spike_ring( int delay );

	int delay() const { return _delay; }

	// Overwrites the slot for `step`. `fired` must be ascending.
	void record( step_t step, std::span<neuron_id const> fired );
	std::vector<neuron_id> & slot_for_write( step_t step );

	// Neurons that fired at now - delay, ascending; empty if now < delay.
	std::span<neuron_id const> arrivals( step_t now ) const;
	// Neurons that fired at `step`, if it is still held by the ring.
	std::span<neuron_id const> fired_at( step_t step ) const;

private:
	int _delay = 0;
	std::vector<std::vector<neuron_id>> _slots;
	std::vector<step_t> _slot_step;
};
} // namespace lazyspike
