#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace lazyspike
{
// splitmix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64( std::uint64_t z )
{
	z += 0x9e3779b97f4a7c15ull;
	z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
	z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
	return z ^ ( z >> 31 );
}

constexpr std::uint64_t hash_key( std::uint64_t a, std::uint64_t b )
{
	return mix64( a ^ mix64( b + 0x632be59bd9b4e019ull ) );
}

constexpr std::uint64_t hash_key( std::uint64_t a, std::uint64_t b, std::uint64_t c )
{
	return hash_key( hash_key( a, b ), c );
}

// Uniform in [0,1) from the top 53 bits.
constexpr double to_unit( std::uint64_t bits ) { return double( bits >> 11 ) * 0x1.0p-53; }

// Counter-based uniform variate keyed by (seed, stream, counter). Results do
// not depend on evaluation order, so parallel schedules stay reproducible.
constexpr double uniform_at( std::uint64_t seed, std::uint64_t stream, std::uint64_t counter )
{
	return to_unit( hash_key( seed, stream, counter ) );
}

// Standard normal variate keyed like uniform_at (Box-Muller, one branch).
inline double normal_at( std::uint64_t seed, std::uint64_t stream, std::uint64_t counter )
{
	double const u1 = 1.0 - uniform_at( seed, stream, 2 * counter );
	double const u2 = uniform_at( seed, stream, 2 * counter + 1 );
	return std::sqrt( -2.0 * std::log( u1 ) ) * std::cos( 6.283185307179586 * u2 );
}

// Sequential stream (UniformRandomBitGenerator) for a keyed substream, e.g.
// one per adjacency row.
class counter_rng
{
public:
	using result_type = std::uint64_t;

	constexpr counter_rng( std::uint64_t seed, std::uint64_t stream ) : _key( hash_key( seed, stream ) ) {}

	static constexpr result_type min() { return 0; }
	static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

	constexpr result_type operator()() { return mix64( _key + 0x9e3779b97f4a7c15ull * ++_ctr ); }

	// Uniform in (0,1].
	constexpr double open_unit() { return 1.0 - to_unit( ( *this )() ); }

private:
	std::uint64_t _key;
	std::uint64_t _ctr = 0;
};
} // namespace lazyspike
