#include <lazyspike/raster.hpp>

#include <istream>
#include <stdexcept>
#include <ostream>
#include <string>

#include <lazyspike/error.hpp>

namespace lazyspike
{
void write_raster( std::ostream & out, std::span<spike const> spikes )
{
	for( auto const & s : spikes ) out << s.step << '\t' << s.id << '\n';
}

std::vector<spike> read_raster( std::istream & in )
{
	std::vector<spike> result;
	step_t step;
	neuron_id id;
	while( in >> step >> id ) result.push_back( { step, id } );
	if( !in.eof() ) throw_invalid( "malformed raster line after " + std::to_string( result.size() ) + " spikes" );
	return result;
}

raster_file_writer::raster_file_writer( std::filesystem::path const & file ) : _out( file )
{
	if( !_out ) throw_invalid( "cannot open raster file " + file.string() );
}

void raster_file_writer::operator()( step_t step, std::span<neuron_id const> fired )
{
	for( neuron_id id : fired ) _out << step << '\t' << id << '\n';
}

void raster_file_writer::close()
{
	_out.close();
	if( _out.fail() ) throw std::runtime_error( "failed writing raster file" );
}
} // namespace lazyspike
