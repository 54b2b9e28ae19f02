#include <lazyspike/delivery.hpp>
#include <lazyspike/error.hpp>
#include <lazyspike/plasticity.hpp>

#include <string>

namespace lazyspike
{
std::string_view to_string( plasticity_strategy s )
{
	switch( s )
	{
		case plasticity_strategy::naive: return "naive";
		case plasticity_strategy::lazy: return "lazy";
		case plasticity_strategy::event: return "event";
	}
	return "?";
}

plasticity_strategy parse_plasticity( std::string_view s )
{
	if( s == "naive" ) return plasticity_strategy::naive;
	if( s == "lazy" ) return plasticity_strategy::lazy;
	if( s == "event" ) return plasticity_strategy::event;
	throw_invalid( "unknown plasticity strategy '" + std::string( s ) + "' (naive|lazy|event)" );
}

std::string_view to_string( delivery_strategy s )
{
	switch( s )
	{
		case delivery_strategy::naive: return "naive";
		case delivery_strategy::sliced: return "sliced";
	}
	return "?";
}

delivery_strategy parse_delivery( std::string_view s )
{
	if( s == "naive" ) return delivery_strategy::naive;
	if( s == "sliced" ) return delivery_strategy::sliced;
	throw_invalid( "unknown delivery strategy '" + std::string( s ) + "' (naive|sliced)" );
}
} // namespace lazyspike
