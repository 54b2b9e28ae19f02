#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lazyspike
{
// One row of benchmark output.
struct bench_record
{
	std::string model;
	std::uint64_t neurons = 0;
	std::uint64_t synapses = 0;
	std::string plasticity;
	std::string delivery;
	std::uint32_t chunk_size = 0;
	int history_bits = 0;
	double dt_ms = 0;
	double bio_seconds = 0;
	double wall_ms = 0;
	double setup_ms = 0;
	std::uint64_t total_spikes = 0;
	std::uint64_t seed = 0;
	int workers = 0;

	static std::string_view csv_header();
	std::string to_csv() const;
	static bench_record from_csv( std::string_view line );

	friend bool operator==( bench_record const &, bench_record const & ) = default;
};
} // namespace lazyspike
