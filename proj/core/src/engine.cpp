#include <lazyspike/engine.hpp>

#include <bit>

namespace lazyspike
{
void strategy_config::validate() const
{
	if( chunk_size < 32 || !std::has_single_bit( chunk_size ) )
		throw_invalid( "slice width must be a power of two >= 32" );
	if( history_bits != 32 && history_bits != 64 ) throw_invalid( "history bits must be 32 or 64" );
	if( workers < 0 ) throw_invalid( "worker count must be >= 0" );
}
} // namespace lazyspike
