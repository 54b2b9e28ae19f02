#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>

#include <omp.h>

namespace lazyspike
{
// 0 selects every available hardware thread.
inline int resolve_workers( int requested )
{
	return requested > 0 ? requested : std::max( 1, omp_get_max_threads() );
}

// Calls f(i) for i in [0, n) with a static partition over `workers` threads.
template <class F>
void parallel_for( std::int64_t n, int workers, F && f )
{
	if( workers <= 1 || n < 2 )
	{
		for( std::int64_t i = 0; i < n; i++ ) f( i );
		return;
	}
#pragma omp parallel for num_threads( workers ) schedule( static )
	for( std::int64_t i = 0; i < n; i++ ) f( i );
}

// Same, but with dynamic scheduling for irregular work items.
template <class F>
void parallel_for_dynamic( std::int64_t n, int workers, F && f )
{
	if( workers <= 1 || n < 2 )
	{
		for( std::int64_t i = 0; i < n; i++ ) f( i );
		return;
	}
#pragma omp parallel for num_threads( workers ) schedule( dynamic, 1 )
	for( std::int64_t i = 0; i < n; i++ ) f( i );
}

// Splits [0, n) into `chunks` contiguous blocks; block boundaries depend only
// on n and chunks, never on the worker count.
struct block_partition
{
	std::size_t n;
	std::size_t chunks;

	std::size_t begin( std::size_t k ) const { return n * k / chunks; }
	std::size_t end( std::size_t k ) const { return n * ( k + 1 ) / chunks; }
};
} // namespace lazyspike
