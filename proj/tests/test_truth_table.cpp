#include <catch_amalgamated.hpp>

#include <random>

#include <pbmap/truth_table.hpp>

using namespace pbmap;

namespace
{

/* minterm-by-minterm reference for tt_flip */
truth_table flip_reference( truth_table f, uint32_t var, uint32_t n )
{
  truth_table r = 0;
  for ( uint32_t m = 0; m < ( 1u << n ); ++m )
    if ( ( f >> ( m ^ ( 1u << var ) ) ) & 1u )
      r |= uint64_t( 1 ) << m;
  return r;
}

} // namespace

TEST_CASE( "projections follow the minterm convention", "[truth_table]" )
{
  for ( uint32_t n = 1; n <= max_tt_vars; ++n )
    for ( uint32_t v = 0; v < n; ++v )
    {
      auto const x = tt_var( v, n );
      for ( uint32_t m = 0; m < ( 1u << n ); ++m )
        CHECK( tt_get_bit( x, m ) == static_cast<bool>( ( m >> v ) & 1u ) );
      CHECK( ( x & ~tt_mask( n ) ) == 0u );
    }
}

TEST_CASE( "cofactors, flips and support agree with minterm evaluation", "[truth_table]" )
{
  std::mt19937_64 rng( 3 );
  for ( int it = 0; it < 500; ++it )
  {
    auto const n = 1u + static_cast<uint32_t>( rng() % max_tt_vars );
    auto const f = rng() & tt_mask( n );
    for ( uint32_t v = 0; v < n; ++v )
    {
      CHECK( tt_flip( f, v, n ) == flip_reference( f, v, n ) );
      CHECK( tt_flip( tt_flip( f, v, n ), v, n ) == f );
      auto const c0 = tt_cofactor0( f, v, n ), c1 = tt_cofactor1( f, v, n );
      bool depends = false;
      for ( uint32_t m = 0; m < ( 1u << n ); ++m )
      {
        auto const lo = m & ~( 1u << v ), hi = m | ( 1u << v );
        CHECK( tt_get_bit( c0, m ) == tt_get_bit( f, lo ) );
        CHECK( tt_get_bit( c1, m ) == tt_get_bit( f, hi ) );
        depends |= tt_get_bit( f, lo ) != tt_get_bit( f, hi );
      }
      CHECK( tt_depends_on( f, v, n ) == depends );
    }
  }
}

TEST_CASE( "gate application covers all two-input functions", "[truth_table]" )
{
  auto const a = tt_var( 0, 2 ), b = tt_var( 1, 2 );
  for ( uint32_t g = 0; g < 16u; ++g )
    CHECK( ( tt_apply2( g, a, b ) & tt_mask( 2 ) ) == g );
  auto const x = tt_var( 0, 1 );
  CHECK( ( tt_apply1( 1u, x ) & tt_mask( 1 ) ) == tt_not( x, 1 ) );
  CHECK( ( tt_apply1( 2u, x ) & tt_mask( 1 ) ) == x );
}

TEST_CASE( "hex printing and popcount", "[truth_table]" )
{
  CHECK( tt_to_hex( 0x8u, 2 ) == "8" );
  CHECK( tt_to_hex( 0x6996u, 4 ) == "6996" );
  CHECK( tt_count_ones( 0x6996u ) == 8 );
}
