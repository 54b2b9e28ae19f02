#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include <lazyspike/models/constants.hpp>

namespace lazyspike
{
// Model constants, overridable from a file of `model.key = value` lines.
// Blank lines and lines starting with '#' are ignored.
struct model_config
{
	vogels_params vogels;
	brunel_params brunel;

	// Throws invalid_input for unknown keys or non-numeric values.
	void set( std::string_view key, std::string_view value );
	void load( std::istream & in );
	void load( std::filesystem::path const & file );
};
} // namespace lazyspike
