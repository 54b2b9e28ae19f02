#include <bit>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <lazyspike/bits.hpp>

using namespace lazyspike;
using bits::word;

namespace
{
std::vector<int> collect( word x )
{
	std::vector<int> out;
	for( int s : bits::descending_set_bits( x ) ) out.push_back( s );
	return out;
}

// Per-bit reference implementations.
word mask_oracle( word x, int age )
{
	word m = 0;
	for( int s = 0; s < age; s++ ) m |= x & ( word( 1 ) << s );
	return m;
}

std::vector<int> scan_oracle( word x )
{
	std::vector<int> out;
	for( int s = 63; s >= 0; s-- )
		if( x & ( word( 1 ) << s ) ) out.push_back( s );
	return out;
}
} // namespace

TEST( Push, ShiftsInNewestBit )
{
	EXPECT_EQ( bits::push( 0b011, true ), 0b111u );
	EXPECT_EQ( bits::push( 0b011, false ), 0b110u );
	EXPECT_EQ( bits::push( ~word( 0 ), false ), ~word( 0 ) << 1 );
}

TEST( Bit, ReadsStepsAgo )
{
	EXPECT_TRUE( bits::bit( 0b100, 2 ) );
	EXPECT_FALSE( bits::bit( 0b100, 0 ) );
	for( int s = 0; s < 64; s++ ) EXPECT_FALSE( bits::bit( 0, s ) );
}

TEST( RecentMask, KeepsLowBits )
{
	EXPECT_EQ( bits::recent_mask( 0xFF, 3 ), 0b111u );
	EXPECT_EQ( bits::recent_mask( 0xDEADBEEF, 0 ), 0u );
	EXPECT_EQ( bits::recent_mask( 0b101010, 5 ), mask_oracle( 0b101010, 5 ) );
	EXPECT_EQ( bits::recent_mask( 0b101010, 5 ), 0b01010u );
	EXPECT_EQ( bits::recent_mask( ~word( 0 ), 64 ), ~word( 0 ) );
}

TEST( RecentMask, MatchesOracleAndNeverAddsBits )
{
	std::mt19937_64 rng( 7 );
	for( int i = 0; i < 100000; i++ )
	{
		word const x = rng();
		int const age = int( rng() % 65 );
		word const m = bits::recent_mask( x, age );
		ASSERT_EQ( m, mask_oracle( x, age ) ) << x << " " << age;
		ASSERT_LE( std::popcount( m ), std::popcount( x ) );
	}
}

TEST( DescendingSetBits, Examples )
{
	EXPECT_EQ( collect( 0b10010 ), ( std::vector<int>{ 4, 1 } ) );
	EXPECT_TRUE( collect( 0 ).empty() );
	EXPECT_EQ( collect( word( 1 ) << 63 ), std::vector<int>{ 63 } );
	EXPECT_EQ( bits::highest_set_bit( 1 ), 0 );
}

TEST( DescendingSetBits, MatchesPerBitScan )
{
	std::mt19937_64 rng( 11 );
	for( int i = 0; i < 100000; i++ )
	{
		word x = rng();
		if( i & 1 ) x &= rng() & rng();
		ASSERT_EQ( collect( x ), scan_oracle( x ) ) << x;
	}
}
