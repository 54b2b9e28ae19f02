#include "commands.hpp"

#include <fmt/format.h>
#include <fstream>
#include <iostream>

#include <lazyspike/bench_record.hpp>
#include <lazyspike/config.hpp>
#include <lazyspike/engine.hpp>
#include <lazyspike/models/brunel.hpp>
#include <lazyspike/models/vogels.hpp>
#include <lazyspike/raster.hpp>

#include "verify.hpp"

namespace lazyspike::cli
{
namespace
{
model_config load_config( run_options const & opt )
{
	model_config cfg;
	if( !opt.config.empty() ) cfg.load( opt.config );
	if( opt.dt_ms )
	{
		cfg.vogels.dt_ms = *opt.dt_ms;
		cfg.brunel.dt_ms = *opt.dt_ms;
	}
	return cfg;
}

// Calls fn(model) with the model named in `opt`, sized for `synapses`.
template <class Fn>
void with_model( run_options const & opt, model_config const & cfg, double synapses, Fn && fn )
{
	if( opt.model == "vogels" )
		fn( vogels_model( opt.neurons.value_or( vogels_model::neurons_for_synapses( synapses, cfg.vogels ) ), cfg.vogels ) );
	else if( opt.model == "brunel" )
		fn( brunel_model( opt.neurons.value_or( brunel_model::neurons_for_synapses( synapses, cfg.brunel ) ), cfg.brunel ) );
	else if( opt.model == "brunel+" )
		fn( brunel_plus_model( opt.neurons.value_or( brunel_plus_model::neurons_for_synapses( synapses, cfg.brunel ) ),
		                       cfg.brunel ) );
	else
		throw_invalid( "unknown model '" + opt.model + "'" );
}

strategy_config make_strategy( run_options const & opt, std::string const & plasticity, std::string const & delivery )
{
	strategy_config s;
	s.plasticity = parse_plasticity( plasticity );
	s.delivery = parse_delivery( delivery );
	s.chunk_size = opt.slice_width;
	s.history_bits = opt.history_bits;
	s.workers = opt.threads;
	s.expire_stale_rows = !opt.no_expiry;
	s.validate();
	return s;
}

template <class Model, class Mask>
bench_record make_record( simulation<Model, Mask> const & sim, std::uint64_t seed )
{
	auto const & m = sim.metrics();
	auto const & cfg = sim.config();
	bench_record r;
	r.model = std::string( sim.model().name() );
	r.neurons = sim.adjacency().num_neurons();
	r.synapses = m.synapses;
	r.plasticity = std::string( to_string( cfg.plasticity ) );
	r.delivery = std::string( to_string( cfg.delivery ) );
	r.chunk_size = cfg.chunk_size;
	r.history_bits = cfg.history_bits;
	r.dt_ms = sim.model().dt_ms();
	r.bio_seconds = sim.clock().bio_seconds();
	r.wall_ms = m.wall_ms;
	r.setup_ms = m.setup_ms;
	r.total_spikes = m.total_spikes;
	r.seed = seed;
	r.workers = cfg.workers;
	return r;
}

// Output goes to --out when given, else to `fallback`.
struct output
{
	std::ofstream file;
	std::ostream * stream;

	output( std::filesystem::path const & path, std::ostream & fallback ) : stream( &fallback )
	{
		if( path.empty() ) return;
		file.open( path );
		if( !file ) throw std::runtime_error( "cannot open output file " + path.string() );
		stream = &file;
	}
};
} // namespace

int cmd_bench( run_options const & opt, std::ostream & out )
{
	auto const cfg = load_config( opt );
	output o( opt.out, out );
	*o.stream << bench_record::csv_header() << '\n';
	for( double syn : opt.synapses )
		for( auto const & p : opt.plasticity )
			for( auto const & d : opt.delivery )
				for( int rep = 0; rep < opt.repeats; rep++ )
					with_model( opt, cfg, syn, [&]( auto model ) {
						simulation sim( std::move( model ), make_strategy( opt, p, d ), opt.seed );
						sim.run( opt.duration_s );
						*o.stream << make_record( sim, opt.seed ).to_csv() << std::endl;
					} );
	return exit_ok;
}

int cmd_setup_bench( run_options const & opt, std::ostream & out )
{
	auto const cfg = load_config( opt );
	output o( opt.out, out );
	*o.stream << bench_record::csv_header() << '\n';
	for( double syn : opt.synapses )
		for( int rep = 0; rep < opt.repeats; rep++ )
			with_model( opt, cfg, syn, [&]( auto model ) {
				simulation sim( std::move( model ), make_strategy( opt, opt.plasticity.front(), opt.delivery.front() ),
				                opt.seed );
				*o.stream << make_record( sim, opt.seed ).to_csv() << std::endl;
				std::cerr << fmt::format( "graph hash {:016x} ({} synapses)\n", sim.adjacency().hash(),
				                          sim.metrics().synapses );
			} );
	return exit_ok;
}

int cmd_run( run_options const & opt, std::ostream & out )
{
	auto const cfg = load_config( opt );
	std::optional<raster_file_writer> raster;
	if( !opt.record_spikes.empty() ) raster.emplace( opt.record_spikes );
	with_model( opt, cfg, opt.synapses.front(), [&]( auto model ) {
		simulation sim( std::move( model ), make_strategy( opt, opt.plasticity.front(), opt.delivery.front() ),
		                opt.seed );
		if( raster ) sim.set_raster_sink( std::ref( *raster ) );
		sim.run( opt.duration_s );
		if( raster ) raster->close();
		auto const & m = sim.metrics();
		out << bench_record::csv_header() << '\n' << make_record( sim, opt.seed ).to_csv() << '\n';
		std::cerr << fmt::format( "phases: neuron {:.1f} ms, plasticity {:.1f} ms, delivery {:.1f} ms\n", m.neuron_ms,
		                          m.plasticity_ms, m.delivery_ms );
	} );
	return exit_ok;
}

int cmd_verify( verify_options const & opt, std::ostream & out )
{
	verify::options vo;
	vo.seed = opt.seed;
	vo.workers = opt.threads;
	vo.mutate_recent_mask = opt.mutate == "recent-mask";
	if( !opt.mutate.empty() && !vo.mutate_recent_mask ) throw_invalid( "unknown mutation '" + opt.mutate + "'" );

	std::vector<std::string> modules = opt.modules;
	if( modules.empty() )
		for( auto m : verify::module_names() ) modules.emplace_back( m );
	for( auto const & m : modules )
		if( !verify::is_module( m ) ) throw_invalid( "unknown module '" + m + "'" );

	int failures = 0;
	for( auto const & m : modules )
		for( auto const & r : verify::run_module( m, vo ) )
		{
			if( r.passed )
				out << fmt::format( "PASS [{}] {} ({}) {:.0f} ms\n", m, r.name, r.detail, r.ms );
			else
			{
				failures++;
				out << fmt::format( "FAIL [{}] {}: {} (seed {})\n", m, r.name, r.detail, r.seed );
			}
			out.flush();
		}
	out << ( failures ? fmt::format( "{} check(s) failed\n", failures ) : std::string( "all checks passed\n" ) );
	return failures ? exit_failure : exit_ok;
}
} // namespace lazyspike::cli
