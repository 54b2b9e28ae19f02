#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lazyspike
{
// Invalid input handed to a public entry point (bad spec, bad flag value).
class invalid_input : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

// Allocation of network state failed; carries the attempted size.
class allocation_failure : public std::runtime_error
{
public:
	allocation_failure( std::string what, std::size_t bytes );
	std::size_t bytes() const { return _bytes; }

private:
	std::size_t _bytes;
};

[[noreturn]] void throw_invalid( std::string const & msg );
} // namespace lazyspike
