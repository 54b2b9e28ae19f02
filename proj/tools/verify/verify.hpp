#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <lazyspike/types.hpp>

namespace lazyspike::verify
{
struct check_result
{
	std::string name;
	bool passed = true;
	std::string detail;
	std::uint64_t seed = 0;
	double ms = 0.0;
};

struct options
{
	std::uint64_t seed = 1;
	bool mutate_recent_mask = false;
	int workers = 1;
};

std::span<std::string_view const> module_names();
bool is_module( std::string_view name );
std::vector<check_result> run_module( std::string_view module, options const & opt );

// Individual checks, also used by the acceptance runner.
check_result pivot_oracle( std::uint64_t seed, int graphs );
check_result pivot_examples();
check_result bit_oracles( std::uint64_t seed, int words );
check_result ring_consistency( std::uint64_t seed, int trials );
check_result replay_properties( std::uint64_t seed, int replays, bool mutate );
check_result counting_equivalence( std::uint64_t seed, step_t steps, bool mutate, int workers = 1 );
check_result reference_equivalence( std::uint64_t seed, bool mutate, int workers = 1 );
check_result accumulator_equivalence( std::uint64_t seed, std::uint32_t neurons, std::uint32_t chunk, step_t steps,
                                      int workers = 1 );
check_result dense_delivery_oracle( std::uint64_t seed );
check_result brunel_delivery_rasters( std::uint64_t seed, std::uint32_t neurons, step_t steps, int workers = 1 );
check_result thread_invariance( std::uint64_t seed, std::uint32_t neurons, step_t steps,
                                std::vector<int> const & worker_counts );
check_result plastic_fraction( std::uint64_t seed, std::uint32_t neurons );
check_result counting_decomposable();
check_result stdp_skip_ahead( std::uint64_t seed, int trials );
check_result refractory_and_bounds( std::uint64_t seed );
} // namespace lazyspike::verify
