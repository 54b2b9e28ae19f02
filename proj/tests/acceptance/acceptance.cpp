// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>

#include <lazyspike/engine.hpp>
#include <lazyspike/models/brunel.hpp>
#include <lazyspike/models/vogels.hpp>
#include <lazyspike/parallel.hpp>

#include "oracles.hpp"
#include "verify.hpp"

using namespace lazyspike;
using verify::check_result;

namespace
{
constexpr std::uint64_t seed = 20261016;

// Tolerances and budgets.
constexpr double pivot_budget_ms = 30'000;
constexpr double counting_budget_ms = 10'000;
constexpr double lazy_vs_naive_rel = 1e-4;
constexpr double event_vs_lazy_rel = 1e-5;
constexpr double lazy_over_naive_max = 0.6;
constexpr double sliced_over_naive_max = 1.05;
constexpr double sliced_over_naive_large_state = 0.9;
constexpr int perf_repeats = 3;
constexpr double fraction_lo = 0.35, fraction_hi = 0.50;
constexpr double slope_lo = 0.7, slope_hi = 1.3;

int failures = 0;

void report( std::string_view id, std::string_view what, bool passed, std::string const & detail )
{
	std::cout << fmt::format( "{} {} {}: {}", id, passed ? "PASS" : "FAIL", what, detail ) << std::endl;
	if( !passed ) failures++;
}

void report( std::string_view id, std::string_view what, std::vector<check_result> const & parts )
{
	bool ok = true;
	std::string detail;
	for( auto const & p : parts )
	{
		ok = ok && p.passed;
		detail += fmt::format( "{}[{} {}; {:.0f} ms; seed {}]", detail.empty() ? "" : " ", p.passed ? "ok" : "failed",
		                       p.detail, p.ms, p.seed );
	}
	report( id, what, ok, detail );
}

double max_relative_diff( std::vector<std::vector<stdp_synapse>> const & a,
                          std::vector<std::vector<stdp_synapse>> const & b )
{
	double worst = 0;
	for( std::size_t i = 0; i < a.size(); i++ )
		for( std::size_t c = 0; c < a[i].size(); c++ )
		{
			double const x = a[i][c].w, y = b[i][c].w;
			double const scale = std::max( std::abs( y ), 1e-12 );
			worst = std::max( worst, std::abs( x - y ) / scale );
		}
	return worst;
}

std::size_t last_level_cache_bytes()
{
	long const l3 = sysconf( _SC_LEVEL3_CACHE_SIZE );
	if( l3 > 0 ) return std::size_t( l3 );
	long const l2 = sysconf( _SC_LEVEL2_CACHE_SIZE );
	return l2 > 0 ? std::size_t( l2 ) : 0;
}

void ac1()
{
	auto r = verify::pivot_oracle( seed, 200 );
	if( r.ms >= pivot_budget_ms )
	{
		r.passed = false;
		r.detail += fmt::format( "; over the {:.0f} ms budget", pivot_budget_ms );
	}
	report( "AC1", "pivot oracle on 200 random graphs", { r } );
}

void ac2()
{
	auto r = verify::counting_equivalence( seed, 1000, false );
	if( r.ms >= counting_budget_ms )
	{
		r.passed = false;
		r.detail += fmt::format( "; over the {:.0f} ms budget", counting_budget_ms );
	}
	report( "AC2", "exact plasticity equivalence, counting model", { r } );
}

void ac3()
{
	brunel_plus_model const m( 4000 );
	auto cfg = [&]( plasticity_strategy p ) {
		strategy_config c;
		c.plasticity = p;
		return c;
	};
	step_t const steps = 10'000;
	auto const naive = verify::run_with( m, cfg( plasticity_strategy::naive ), seed, steps );
	auto const lazy = verify::run_with( m, cfg( plasticity_strategy::lazy ), seed, steps );
	auto const event = verify::run_with( m, cfg( plasticity_strategy::event ), seed, steps );
	double const ln = max_relative_diff( lazy.synapses, naive.synapses );
	double const el = max_relative_diff( event.synapses, lazy.synapses );
	bool const ok = ln <= lazy_vs_naive_rel && el <= event_vs_lazy_rel && !naive.raster.empty();
	report( "AC3", "float plasticity equivalence, Brunel+ STDP", ok,
	        fmt::format( "N=4000, {} synapses, {} steps, {} spikes; lazy vs naive {:.3g} (<= {:g}), event vs lazy {:.3g} "
	                     "(<= {:g}); seed {}",
	                     naive.metrics.synapses, steps, naive.raster.size(), ln, lazy_vs_naive_rel, el,
	                     event_vs_lazy_rel, seed ) );
}

void ac4()
{
	report( "AC4", "delivery equivalence",
	        { verify::accumulator_equivalence( seed, 4096, 64, 500 ),
	          verify::accumulator_equivalence( seed, 4096, 1024, 500 ),
	          verify::brunel_delivery_rasters( seed, 4000, 2000 ) } );
}

double mean_wall_ms( std::vector<double> const & v )
{
	double s = 0;
	for( double x : v ) s += x;
	return s / double( v.size() );
}

void ac5()
{
	int const workers = resolve_workers( 0 );

	// Plasticity ordering on Brunel+ at >= 5e6 synapses.
	auto const bp_neurons = brunel_plus_model::neurons_for_synapses( 5.2e6 );
	brunel_plus_model const bp( bp_neurons );
	std::vector<double> wall[3];
	std::size_t bp_synapses = 0;
	step_t const bp_steps = 1000;
	for( int rep = 0; rep < perf_repeats; rep++ )
		for( auto p : { plasticity_strategy::naive, plasticity_strategy::lazy, plasticity_strategy::event } )
		{
			strategy_config c;
			c.plasticity = p;
			c.workers = workers;
			simulation<brunel_plus_model> sim( bp, c, seed );
			sim.run_steps( bp_steps );
			bp_synapses = sim.metrics().synapses;
			wall[int( p )].push_back( sim.metrics().wall_ms );
		}
	double const naive_ms = mean_wall_ms( wall[0] );
	double const lazy_ms = mean_wall_ms( wall[1] );
	double const event_ms = mean_wall_ms( wall[2] );
	bool const plast_ok = lazy_ms <= lazy_over_naive_max * naive_ms && event_ms <= lazy_ms;

	// Delivery on Vogels at >= 1e7 synapses and >= 1e5 neurons.
	vogels_model const vg( 100'000 );
	std::vector<double> dwall[2];
	std::size_t vg_synapses = 0, state_bytes = 0;
	std::uint64_t vg_spikes = 0;
	step_t const vg_steps = 1000;
	for( int rep = 0; rep < perf_repeats; rep++ )
		for( auto d : { delivery_strategy::naive, delivery_strategy::sliced } )
		{
			strategy_config c;
			c.delivery = d;
			c.workers = workers;
			simulation<vogels_model> sim( vg, c, seed );
			sim.run_steps( vg_steps );
			vg_synapses = sim.metrics().synapses;
			vg_spikes = sim.metrics().total_spikes;
			state_bytes = sim.neurons().size_bytes() + sim.accumulators().size_bytes();
			dwall[int( d )].push_back( sim.metrics().wall_ms );
		}
	double const dn_ms = mean_wall_ms( dwall[0] );
	double const ds_ms = mean_wall_ms( dwall[1] );
	std::size_t const llc = last_level_cache_bytes();
	bool const large_state = llc > 0 && state_bytes > llc;
	bool const deliv_ok = ds_ms <= sliced_over_naive_max * dn_ms &&
	                      ( !large_state || ds_ms <= sliced_over_naive_large_state * dn_ms );

	std::string const llc_note =
	    large_state ? fmt::format( "neuron state {:.1f} MB exceeds LLC {:.1f} MB, outright win required (<= {:g}x)",
	                               state_bytes / 1e6, llc / 1e6, sliced_over_naive_large_state )
	                : fmt::format( "neuron state {:.1f} MB fits in LLC {:.1f} MB, outright-win clause not exercised",
	                               state_bytes / 1e6, llc / 1e6 );
	report( "AC5", "performance ordering", plast_ok && deliv_ok,
	        fmt::format( "Brunel+ N={} {} synapses {} steps, mean of {}: naive {:.0f} ms, lazy {:.0f} ms ({:.2f}x, <= "
	                     "{:g}x), event {:.0f} ms ({:.2f}x of lazy, <= 1x); Vogels N=100000 {} synapses {} steps {} "
	                     "spikes: naive delivery {:.0f} ms, sliced {:.0f} ms ({:.3f}x, <= {:g}x); {}; workers {}",
	                     bp_neurons, bp_synapses, bp_steps, perf_repeats, naive_ms, lazy_ms, lazy_ms / naive_ms,
	                     lazy_over_naive_max, event_ms, event_ms / lazy_ms, vg_synapses, vg_steps, vg_spikes, dn_ms,
	                     ds_ms, ds_ms / dn_ms, sliced_over_naive_max, llc_note, workers ) );
}

void ac6()
{
	report( "AC6", "replay step conservation and call bounds over 1e5 replays",
	        { verify::replay_properties( seed, 100'000, false ) } );
}

void ac7()
{
	int const max_workers = resolve_workers( 0 );
	report( "AC7", "thread-count invariance",
	        { verify::thread_invariance( seed, 4000, 2000, { 1, 2, max_workers, 4 } ) } );
}

void ac8()
{
	report( "AC8", "Brunel+ plastic synapse fraction in [0.35, 0.50]", { verify::plastic_fraction( seed, 10'000 ) } );
}

void ac9()
{
	std::vector<double> xs, ys;
	std::string points;
	for( double syn = 1e6; syn <= 1.6e7 * 1.001; syn *= 2 )
	{
		std::vector<double> ms;
		std::size_t actual = 0;
		for( int rep = 0; rep < 3; rep++ )
		{
			simulation<brunel_model> sim( brunel_model( brunel_model::neurons_for_synapses( syn ) ), {}, seed );
			ms.push_back( sim.metrics().setup_ms );
			actual = sim.metrics().synapses;
		}
		std::sort( ms.begin(), ms.end() );
		xs.push_back( std::log( double( actual ) ) );
		ys.push_back( std::log( ms[1] ) );
		points += fmt::format( "{}{:.2g}:{:.0f}ms", points.empty() ? "" : " ", double( actual ), ms[1] );
	}
	double const n = double( xs.size() );
	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	for( std::size_t i = 0; i < xs.size(); i++ )
	{
		sx += xs[i];
		sy += ys[i];
		sxx += xs[i] * xs[i];
		sxy += xs[i] * ys[i];
	}
	double const slope = ( n * sxy - sx * sy ) / ( n * sxx - sx * sx );
	report( "AC9", "setup time linear in synapse count", slope >= slope_lo && slope <= slope_hi,
	        fmt::format( "log-log slope {:.3f} (in [{:g}, {:g}]); median of 3: {}", slope, slope_lo, slope_hi,
	                     points ) );
}
} // namespace

int main()
{
	std::pair<char const *, void ( * )()> const criteria[] = { { "AC1", ac1 }, { "AC2", ac2 }, { "AC3", ac3 },
	                                                           { "AC4", ac4 }, { "AC5", ac5 }, { "AC6", ac6 },
	                                                           { "AC7", ac7 }, { "AC8", ac8 }, { "AC9", ac9 } };
	for( auto const & [id, fn] : criteria )
	{
		try
		{
			fn();
		}
		catch( std::exception const & e )
		{
			report( id, "exception", false, e.what() );
		}
	}
	std::cout << fmt::format( "{} criteria failed", failures ) << std::endl;
	return failures == 0 ? 0 : 1;
}
