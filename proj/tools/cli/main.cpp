#include <iostream>

#include <CLI11.hpp>

#include <lazyspike/error.hpp>

#include "commands.hpp"

using namespace lazyspike::cli;

namespace
{
void add_run_flags( CLI::App * cmd, run_options & o, bool sweep )
{
	cmd->add_option( "--model", o.model, "vogels, brunel or brunel+" )
	    ->check( CLI::IsMember( { "vogels", "brunel", "brunel+" } ) )
	    ->capture_default_str();
	auto * syn = cmd->add_option( "--synapses", o.synapses, "target synapse count(s)" )->capture_default_str();
	cmd->add_option( "--neurons", o.neurons, "exact neuron count (overrides --synapses)" );
	auto * pl = cmd->add_option( "--plasticity", o.plasticity, "naive, lazy, event" )
	                ->check( CLI::IsMember( { "naive", "lazy", "event" } ) )
	                ->capture_default_str();
	auto * dl = cmd->add_option( "--delivery", o.delivery, "naive, sliced" )
	                ->check( CLI::IsMember( { "naive", "sliced" } ) )
	                ->capture_default_str();
	if( sweep )
	{
		syn->delimiter( ',' );
		pl->delimiter( ',' );
		dl->delimiter( ',' );
	}
	else
	{
		syn->expected( 1 );
		pl->expected( 1 );
		dl->expected( 1 );
	}
	cmd->add_option( "--slice-width", o.slice_width, "neurons per delivery slice (power of two >= 32)" )
	    ->capture_default_str();
	cmd->add_option( "--history", o.history_bits, "firing history bits (32 or 64)" )
	    ->check( CLI::IsMember( { 32, 64 } ) )
	    ->capture_default_str();
	cmd->add_option( "--duration", o.duration_s, "biological seconds to simulate" )
	    ->check( CLI::NonNegativeNumber )
	    ->capture_default_str();
	cmd->add_option( "--dt", o.dt_ms, "time step in ms" )->check( CLI::PositiveNumber );
	cmd->add_option( "--seed", o.seed, "random seed" )->capture_default_str();
	cmd->add_option( "--threads", o.threads, "worker threads (0 = all)" )
	    ->check( CLI::NonNegativeNumber )
	    ->capture_default_str();
	cmd->add_option( "--config", o.config, "file of model.key = value overrides" )->check( CLI::ExistingFile );
	cmd->add_flag( "--no-expiry", o.no_expiry, "let replay ages clamp instead of expiring stale rows" );
	if( sweep )
	{
		cmd->add_option( "--repeats", o.repeats, "runs per point" )->check( CLI::PositiveNumber )->capture_default_str();
		cmd->add_option( "--out", o.out, "write CSV here instead of stdout" );
	}
	else
		cmd->add_option( "--record-spikes", o.record_spikes, "write the spike raster (step<TAB>neuron) here" );
}
} // namespace

int main( int argc, char ** argv )
{
	CLI::App app{ "lazyspike: clock-driven spiking network simulator and benchmark harness" };
	app.require_subcommand( 1 );

	run_options bench_opt, setup_opt, run_opt;
	verify_options verify_opt;

	auto * bench = app.add_subcommand( "bench", "run a (model x size x strategy) matrix, one CSV row per run" );
	add_run_flags( bench, bench_opt, true );

	auto * setup = app.add_subcommand( "setup-bench", "time network construction over sizes" );
	add_run_flags( setup, setup_opt, true );

	auto * run = app.add_subcommand( "run", "single simulation, optionally recording the spike raster" );
	add_run_flags( run, run_opt, false );

	auto * verify = app.add_subcommand( "verify", "run the oracle and cross-strategy equivalence suites" );
	verify->add_option( "--module", verify_opt.modules, "pivots, bits, history, plasticity, delivery, models, engine" )
	    ->delimiter( ',' );
	verify->add_option( "--mutate", verify_opt.mutate, "inject a known fault (recent-mask)" );
	verify->add_option( "--seed", verify_opt.seed )->capture_default_str();
	verify->add_option( "--threads", verify_opt.threads )->check( CLI::NonNegativeNumber )->capture_default_str();

	try
	{
		app.parse( argc, argv );
	}
	catch( CLI::ParseError const & e )
	{
		int const code = app.exit( e );
		return code == 0 ? exit_ok : exit_usage;
	}

	try
	{
		if( *bench ) return cmd_bench( bench_opt, std::cout );
		if( *setup ) return cmd_setup_bench( setup_opt, std::cout );
		if( *run ) return cmd_run( run_opt, std::cout );
		if( *verify ) return cmd_verify( verify_opt, std::cout );
	}
	catch( lazyspike::invalid_input const & e )
	{
		std::cerr << "error: " << e.what() << "\n" << app.help();
		return exit_usage;
	}
	catch( std::exception const & e )
	{
		std::cerr << "error: " << e.what() << '\n';
		return exit_failure;
	}
	return exit_ok;
}
