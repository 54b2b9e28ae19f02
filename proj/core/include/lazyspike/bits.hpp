#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <iterator>

// Operations on per-neuron firing histories. A history word holds one bit per
// simulation step; bit s is set iff the neuron fired s steps ago (LSB = now).
namespace lazyspike::bits
{
using word = std::uint64_t;
inline constexpr int word_bits = 64;

// Shift in the current step's firing flag; the oldest bit falls off.
constexpr word push( word hist, bool fired ) { return ( hist << 1 ) | word( fired ); }

constexpr bool bit( word hist, int steps_ago )
{
	assert( steps_ago >= 0 && steps_ago < word_bits );
	return ( hist >> steps_ago ) & 1u;
}

// The replay window of `age` steps: positions age-1 .. 0 (step now-s <=> s).
constexpr word recent_mask( word hist, int age )
{
	assert( age >= 0 && age <= word_bits );
	if( age >= word_bits ) return hist;
	return hist & ( ( word( 1 ) << age ) - 1 );
}

constexpr int highest_set_bit( word x )
{
	assert( x != 0 );
	return word_bits - 1 - std::countl_zero( x );
}

// Iterates the set bit positions of a word from most to least significant,
// one count-leading-zeros per element.
class descending_set_bits
{
public:
	class iterator
	{
	public:
		using value_type = int;
		using difference_type = std::ptrdiff_t;

		constexpr iterator() = default;
		constexpr explicit iterator( word w ) : _w( w ) {}

		constexpr int operator*() const { return highest_set_bit( _w ); }
		constexpr iterator & operator++()
		{
			_w &= ~( word( 1 ) << highest_set_bit( _w ) );
			return *this;
		}
		constexpr iterator operator++( int )
		{
			auto tmp = *this;
			++*this;
			return tmp;
		}
		friend constexpr bool operator==( iterator a, iterator b ) { return a._w == b._w; }

	private:
		word _w = 0;
	};

	constexpr explicit descending_set_bits( word w ) : _w( w ) {}
	constexpr iterator begin() const { return iterator( _w ); }
	constexpr iterator end() const { return iterator( 0 ); }

private:
	word _w;
};

static_assert( std::forward_iterator<descending_set_bits::iterator> );
} // namespace lazyspike::bits
