#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <vector>

#include <lazyspike/types.hpp>

namespace lazyspike
{
struct spike
{
	step_t step;
	neuron_id id;

	friend bool operator==( spike const &, spike const & ) = default;
};

// In-memory raster, usable as a raster_sink.
struct raster_recorder
{
	std::vector<spike> spikes;

	void operator()( step_t step, std::span<neuron_id const> fired )
	{
		for( neuron_id id : fired ) spikes.push_back( { step, id } );
	}
};

// One "step<TAB>neuron_id" line per spike.
void write_raster( std::ostream & out, std::span<spike const> spikes );
std::vector<spike> read_raster( std::istream & in );

class raster_file_writer
{
public:
	explicit raster_file_writer( std::filesystem::path const & file );

	void operator()( step_t step, std::span<neuron_id const> fired );
	void close();

private:
	std::ofstream _out;
};
} // namespace lazyspike
