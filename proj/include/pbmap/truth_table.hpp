#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace pbmap
{

/* Truth tables over at most 6 variables live in one 64-bit word. Bit m holds
 * the value for the minterm in which variable i takes ((m >> i) & 1). */
using truth_table = uint64_t;

inline constexpr uint32_t max_tt_vars = 6u;

inline constexpr std::array<uint64_t, 6> tt_projections = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

constexpr uint64_t tt_mask( uint32_t num_vars )
{
  return num_vars >= 6u ? ~uint64_t( 0 ) : ( ( uint64_t( 1 ) << ( 1u << num_vars ) ) - 1u );
}

constexpr truth_table tt_var( uint32_t var, uint32_t num_vars )
{
  return tt_projections[var] & tt_mask( num_vars );
}

constexpr truth_table tt_not( truth_table tt, uint32_t num_vars )
{
  return ~tt & tt_mask( num_vars );
}

constexpr bool tt_get_bit( truth_table tt, uint32_t minterm )
{
  return ( tt >> minterm ) & 1u;
}

/* negative and positive cofactor w.r.t. var, kept as functions over num_vars */
constexpr truth_table tt_cofactor0( truth_table tt, uint32_t var, uint32_t num_vars )
{
  auto const shift = 1u << var;
  auto const lo = tt & ~tt_projections[var];
  return ( lo | ( lo << shift ) ) & tt_mask( num_vars );
}

constexpr truth_table tt_cofactor1( truth_table tt, uint32_t var, uint32_t num_vars )
{
  auto const shift = 1u << var;
  auto const hi = tt & tt_projections[var];
  return ( hi | ( hi >> shift ) ) & tt_mask( num_vars );
}

constexpr bool tt_depends_on( truth_table tt, uint32_t var, uint32_t num_vars )
{
  return tt_cofactor0( tt, var, num_vars ) != tt_cofactor1( tt, var, num_vars );
}

/* the function with input var complemented */
constexpr truth_table tt_flip( truth_table tt, uint32_t var, uint32_t num_vars )
{
  auto const shift = 1u << var;
  auto const hi = tt & tt_projections[var];
  auto const lo = tt & ~tt_projections[var];
  return ( ( hi >> shift ) | ( lo << shift ) ) & tt_mask( num_vars );
}

/* applies a 2-input gate function (4-bit table, input 0 is the low index) to words */
constexpr uint64_t tt_apply2( uint32_t gate_tt, uint64_t x, uint64_t y )
{
  uint64_t r = 0;
  if ( gate_tt & 1u )
    r |= ~x & ~y;
  if ( gate_tt & 2u )
    r |= x & ~y;
  if ( gate_tt & 4u )
    r |= ~x & y;
  if ( gate_tt & 8u )
    r |= x & y;
  return r;
}

/* applies a 1-input gate function (2-bit table) */
constexpr uint64_t tt_apply1( uint32_t gate_tt, uint64_t x )
{
  uint64_t r = 0;
  if ( gate_tt & 1u )
    r |= ~x;
  if ( gate_tt & 2u )
    r |= x;
  return r;
}

inline std::string tt_to_hex( truth_table tt, uint32_t num_vars )
{
  auto const digits = num_vars <= 2u ? 1u : ( 1u << num_vars ) / 4u;
  char buf[20];
  std::snprintf( buf, sizeof( buf ), "%0*llx", static_cast<int>( digits ), static_cast<unsigned long long>( tt & tt_mask( num_vars ) ) );
  return buf;
}

inline int tt_count_ones( truth_table tt )
{
  return __builtin_popcountll( tt );
}

} // namespace pbmap
