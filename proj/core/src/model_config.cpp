#include <lazyspike/config.hpp>

#include <charconv>
#include <fstream>
#include <string>

#include <lazyspike/error.hpp>

namespace lazyspike
{
namespace
{
std::string_view trim( std::string_view s )
{
	auto const first = s.find_first_not_of( " \t\r" );
	if( first == std::string_view::npos ) return {};
	auto const last = s.find_last_not_of( " \t\r" );
	return s.substr( first, last - first + 1 );
}

double parse_number( std::string_view key, std::string_view value )
{
	double x = 0;
	auto const [ptr, ec] = std::from_chars( value.data(), value.data() + value.size(), x );
	if( ec != std::errc{} || ptr != value.data() + value.size() )
		throw_invalid( "config: '" + std::string( key ) + "' expects a number, got '" + std::string( value ) + "'" );
	return x;
}

template <class Params>
bool try_set( Params & p, std::string_view key, std::string_view value )
{
	if( !key.starts_with( Params::prefix ) || key.size() <= Params::prefix.size() ||
	    key[Params::prefix.size()] != '.' )
		return false;
	auto const field = key.substr( Params::prefix.size() + 1 );
	for( auto const & [name, member] : Params::fields )
		if( name == field )
		{
			p.*member = parse_number( key, value );
			return true;
		}
	throw_invalid( "config: unknown key '" + std::string( key ) + "'" );
}
} // namespace

void model_config::set( std::string_view key, std::string_view value )
{
	key = trim( key );
	value = trim( value );
	if( try_set( vogels, key, value ) || try_set( brunel, key, value ) ) return;
	throw_invalid( "config: unknown key '" + std::string( key ) + "'" );
}

void model_config::load( std::istream & in )
{
	std::string line;
	int lineno = 0;
	while( std::getline( in, line ) )
	{
		lineno++;
		auto const s = trim( line );
		if( s.empty() || s.front() == '#' ) continue;
		auto const eq = s.find( '=' );
		if( eq == std::string_view::npos )
			throw_invalid( "config line " + std::to_string( lineno ) + ": expected key = value" );
		set( s.substr( 0, eq ), s.substr( eq + 1 ) );
	}
}

void model_config::load( std::filesystem::path const & file )
{
	std::ifstream in( file );
	if( !in ) throw_invalid( "cannot open config file " + file.string() );
	load( in );
}
} // namespace lazyspike
