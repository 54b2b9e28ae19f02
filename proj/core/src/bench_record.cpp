#include <lazyspike/bench_record.hpp>

#include <charconv>
#include <type_traits>
#include <vector>

#include <lazyspike/error.hpp>

namespace lazyspike
{
namespace
{
template <class T>
T field( std::string_view s, char const * name )
{
	T x{};
	auto const [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), x );
	if( ec != std::errc{} || ptr != s.data() + s.size() )
		throw_invalid( std::string( "bench record: bad " ) + name + " '" + std::string( s ) + "'" );
	return x;
}
} // namespace

std::string_view bench_record::csv_header()
{
	return "model,neurons,synapses,plasticity,delivery,chunk_size,history_bits,dt_ms,bio_seconds,wall_ms,setup_ms,"
	       "total_spikes,seed,workers";
}

std::string bench_record::to_csv() const
{
	std::string out = model;
	auto add = [&]( auto const & v ) {
		out += ',';
		if constexpr( std::is_floating_point_v<std::decay_t<decltype( v )>> )
		{
			char buf[32];
			auto const r = std::to_chars( buf, buf + sizeof buf, v );
			out.append( buf, r.ptr );
		}
		else if constexpr( std::is_arithmetic_v<std::decay_t<decltype( v )>> )
			out += std::to_string( v );
		else
			out += v;
	};
	add( neurons );
	add( synapses );
	add( plasticity );
	add( delivery );
	add( chunk_size );
	add( history_bits );
	add( dt_ms );
	add( bio_seconds );
	add( wall_ms );
	add( setup_ms );
	add( total_spikes );
	add( seed );
	add( workers );
	return out;
}

bench_record bench_record::from_csv( std::string_view line )
{
	std::vector<std::string_view> cols;
	for( std::size_t start = 0;; )
	{
		auto const comma = line.find( ',', start );
		cols.push_back( line.substr( start, comma - start ) );
		if( comma == std::string_view::npos ) break;
		start = comma + 1;
	}
	if( cols.size() != 14 ) throw_invalid( "bench record: expected 14 columns, got " + std::to_string( cols.size() ) );

	bench_record r;
	r.model = cols[0];
	r.neurons = field<std::uint64_t>( cols[1], "neurons" );
	r.synapses = field<std::uint64_t>( cols[2], "synapses" );
	r.plasticity = cols[3];
	r.delivery = cols[4];
	r.chunk_size = field<std::uint32_t>( cols[5], "chunk_size" );
	r.history_bits = field<int>( cols[6], "history_bits" );
	r.dt_ms = field<double>( cols[7], "dt_ms" );
	r.bio_seconds = field<double>( cols[8], "bio_seconds" );
	r.wall_ms = field<double>( cols[9], "wall_ms" );
	r.setup_ms = field<double>( cols[10], "setup_ms" );
	r.total_spikes = field<std::uint64_t>( cols[11], "total_spikes" );
	r.seed = field<std::uint64_t>( cols[12], "seed" );
	r.workers = field<int>( cols[13], "workers" );
	return r;
}
} // namespace lazyspike
