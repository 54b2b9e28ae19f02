#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lazyspike::cli
{
enum exit_code : int
{
	exit_ok = 0,
	exit_failure = 1,
	exit_usage = 2,
};

struct run_options
{
	std::string model = "brunel";
	std::vector<double> synapses{ 1e6 };
	std::optional<std::uint32_t> neurons;
	std::vector<std::string> plasticity{ "event" };
	std::vector<std::string> delivery{ "sliced" };
	std::uint32_t slice_width = 1024;
	int history_bits = 64;
	double duration_s = 1.0;
	std::optional<double> dt_ms;
	std::uint64_t seed = 1;
	int threads = 0;
	int repeats = 1;
	std::filesystem::path out;
	std::filesystem::path config;
	std::filesystem::path record_spikes;
	bool no_expiry = false;
};

struct verify_options
{
	std::vector<std::string> modules;
	std::string mutate;
	std::uint64_t seed = 1;
	int threads = 1;
};

int cmd_bench( run_options const & opt, std::ostream & out );
int cmd_setup_bench( run_options const & opt, std::ostream & out );
int cmd_run( run_options const & opt, std::ostream & out );
int cmd_verify( verify_options const & opt, std::ostream & out );
} // namespace lazyspike::cli
