#include <lazyspike/error.hpp>

namespace lazyspike
{
allocation_failure::allocation_failure( std::string what, std::size_t bytes )
    : std::runtime_error( what + " (attempted to allocate " + std::to_string( bytes ) + " bytes)" )
    , _bytes( bytes )
{
}

void throw_invalid( std::string const & msg ) { throw invalid_input( msg ); }
} // namespace lazyspike
