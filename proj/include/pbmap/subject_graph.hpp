#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "truth_table.hpp"

namespace pbmap
{

using node_id = uint32_t;

/*! \brief Edge into a node, with the complement flag in the low bit. */
struct signal
{
  uint32_t data{ 0 };

  signal() = default;
  signal( node_id n, bool complemented ) : data( ( n << 1 ) | static_cast<uint32_t>( complemented ) ) {}

  node_id node() const { return data >> 1; }
  bool complemented() const { return data & 1u; }

  signal operator!() const { return from_data( data ^ 1u ); }
  signal operator^( bool c ) const { return from_data( data ^ static_cast<uint32_t>( c ) ); }
  bool operator==( signal const& o ) const { return data == o.data; }
  bool operator!=( signal const& o ) const { return data != o.data; }
  bool operator<( signal const& o ) const { return data < o.data; }

  static signal from_data( uint32_t d )
  {
    signal s;
    s.data = d;
    return s;
  }
};

enum class node_kind : uint8_t
{
  constant,
  pi,
  and_gate
};

struct and_node
{
  node_kind kind{ node_kind::constant };
  signal fanin0;
  signal fanin1;
  uint32_t level{ 0 };
};

struct primary_output
{
  signal driver;
  std::string name;
};

/*! \brief AND-inverter subject graph.
 *
 * Node 0 is the constant-0 node. Nodes are created after their fanins, so node
 * ids are a topological order. AND nodes are structurally hashed and trivially
 * simplified on creation.
 */
class subject_graph
{
public:
  subject_graph()
  {
    nodes_.emplace_back();
  }

  std::string name{ "top" };

  signal get_constant( bool value ) const { return signal( 0, value ); }

  signal create_pi( std::string const& name = {} )
  {
    auto const n = static_cast<node_id>( nodes_.size() );
    and_node nd;
    nd.kind = node_kind::pi;
    nodes_.push_back( nd );
    pi_index_.resize( nodes_.size(), UINT32_MAX );
    pi_index_[n] = static_cast<uint32_t>( pis_.size() );
    pis_.push_back( n );
    pi_names_.push_back( name.empty() ? "pi" + std::to_string( pis_.size() - 1 ) : name );
    return signal( n, false );
  }

  signal create_and( signal a, signal b )
  {
    if ( b < a )
      std::swap( a, b );
    if ( a.node() == 0 )
      return a.complemented() ? b : get_constant( false );
    if ( a.node() == b.node() )
      return a == b ? a : get_constant( false );

    uint64_t const key = ( uint64_t( a.data ) << 32 ) | b.data;
    if ( auto it = strash_.find( key ); it != strash_.end() )
      return signal( it->second, false );

    auto const n = static_cast<node_id>( nodes_.size() );
    and_node nd;
    nd.kind = node_kind::and_gate;
    nd.fanin0 = a;
    nd.fanin1 = b;
    nd.level = 1u + std::max( nodes_[a.node()].level, nodes_[b.node()].level );
    nodes_.push_back( nd );
    strash_.emplace( key, n );
    ++num_gates_;
    return signal( n, false );
  }

  signal create_or( signal a, signal b ) { return !create_and( !a, !b ); }

  signal create_xor( signal a, signal b )
  {
    return create_or( create_and( a, !b ), create_and( !a, b ) );
  }

  /* balanced binary decomposition of a wide AND */
  signal create_nary_and( std::vector<signal> fs )
  {
    if ( fs.empty() )
      return get_constant( true );
    while ( fs.size() > 1u )
    {
      std::vector<signal> next;
      for ( size_t i = 0; i + 1 < fs.size(); i += 2 )
        next.push_back( create_and( fs[i], fs[i + 1] ) );
      if ( fs.size() % 2u )
        next.push_back( fs.back() );
      fs = std::move( next );
    }
    return fs.front();
  }

  signal create_nary_or( std::vector<signal> fs )
  {
    for ( auto& f : fs )
      f = !f;
    return !create_nary_and( std::move( fs ) );
  }

  /* Shannon decomposition of a small function over the given inputs */
  signal create_function( truth_table tt, std::vector<signal> const& inputs )
  {
    auto const n = static_cast<uint32_t>( inputs.size() );
    tt &= tt_mask( n );
    if ( tt == 0 )
      return get_constant( false );
    if ( tt == tt_mask( n ) )
      return get_constant( true );
    auto const var = n - 1u;
    auto const f0 = tt_cofactor0( tt, var, n ) & tt_mask( var );
    auto const f1 = tt_cofactor1( tt, var, n ) & tt_mask( var );
    std::vector<signal> rest( inputs.begin(), inputs.end() - 1 );
    auto const x = inputs.back();
    if ( f0 == f1 )
      return create_function( f0, rest );
    auto const full = tt_mask( var );
    if ( f0 == 0 )
      return create_and( x, create_function( f1, rest ) );
    if ( f1 == 0 )
      return create_and( !x, create_function( f0, rest ) );
    if ( f1 == full )
      return create_or( x, create_function( f0, rest ) );
    if ( f0 == full )
      return create_or( !x, create_function( f1, rest ) );
    if ( f1 == ( ~f0 & full ) )
      return create_xor( x, create_function( f0, rest ) );
    return create_or( create_and( x, create_function( f1, rest ) ), create_and( !x, create_function( f0, rest ) ) );
  }

  void create_po( signal s, std::string const& name = {} )
  {
    pos_.push_back( { s, name.empty() ? "po" + std::to_string( pos_.size() ) : name } );
  }

  uint32_t size() const { return static_cast<uint32_t>( nodes_.size() ); }
  uint32_t num_pis() const { return static_cast<uint32_t>( pis_.size() ); }
  uint32_t num_pos() const { return static_cast<uint32_t>( pos_.size() ); }
  uint32_t num_gates() const { return num_gates_; }

  node_kind kind( node_id n ) const { return nodes_[n].kind; }
  bool is_constant( node_id n ) const { return nodes_[n].kind == node_kind::constant; }
  bool is_pi( node_id n ) const { return nodes_[n].kind == node_kind::pi; }
  bool is_and( node_id n ) const { return nodes_[n].kind == node_kind::and_gate; }

  signal fanin0( node_id n ) const { return nodes_[n].fanin0; }
  signal fanin1( node_id n ) const { return nodes_[n].fanin1; }
  uint32_t level( node_id n ) const { return nodes_[n].level; }
  and_node const& node( node_id n ) const { return nodes_[n]; }

  std::vector<node_id> const& pis() const { return pis_; }
  std::vector<primary_output> const& pos() const { return pos_; }
  std::string const& pi_name( uint32_t index ) const { return pi_names_[index]; }
  uint32_t pi_index( node_id n ) const { return n < pi_index_.size() ? pi_index_[n] : UINT32_MAX; }

  /*! \brief Logical depth: the largest PO level. */
  uint32_t depth() const
  {
    uint32_t d = 0;
    for ( auto const& po : pos_ )
      d = std::max( d, nodes_[po.driver.node()].level );
    return d;
  }

  /*! \brief Number of references per node from AND fanins and POs. */
  std::vector<uint32_t> fanout_counts() const
  {
    std::vector<uint32_t> fo( nodes_.size(), 0u );
    for ( node_id n = 0; n < size(); ++n )
    {
      if ( !is_and( n ) )
        continue;
      ++fo[nodes_[n].fanin0.node()];
      ++fo[nodes_[n].fanin1.node()];
    }
    for ( auto const& po : pos_ )
      ++fo[po.driver.node()];
    return fo;
  }

  template<typename Fn>
  void foreach_gate( Fn&& fn ) const
  {
    for ( node_id n = 0; n < size(); ++n )
      if ( is_and( n ) )
        fn( n );
  }

private:
  std::vector<and_node> nodes_;
  std::vector<node_id> pis_;
  std::vector<uint32_t> pi_index_{ UINT32_MAX };
  std::vector<std::string> pi_names_;
  std::vector<primary_output> pos_;
  std::unordered_map<uint64_t, node_id> strash_;
  uint32_t num_gates_{ 0 };
};

/*! \brief Recomputes levels from scratch; throws on a fanin that does not
 * precede its node (which would indicate a cycle). */
inline std::vector<uint32_t> compute_levels( subject_graph const& g )
{
  std::vector<uint32_t> levels( g.size(), 0u );
  for ( node_id n = 0; n < g.size(); ++n )
  {
    if ( !g.is_and( n ) )
      continue;
    auto const a = g.fanin0( n ).node();
    auto const b = g.fanin1( n ).node();
    if ( a >= n || b >= n )
      throw error( error_stage::parse, "cycle detected at node " + std::to_string( n ) );
    levels[n] = 1u + std::max( levels[a], levels[b] );
  }
  return levels;
}

/*! \brief Copy of g without nodes that reach no PO. PIs are kept. */
inline subject_graph sweep( subject_graph const& g )
{
  std::vector<bool> live( g.size(), false );
  for ( auto const& po : g.pos() )
    live[po.driver.node()] = true;
  for ( node_id n = g.size(); n-- > 0; )
  {
    if ( live[n] && g.is_and( n ) )
    {
      live[g.fanin0( n ).node()] = true;
      live[g.fanin1( n ).node()] = true;
    }
  }

  subject_graph res;
  res.name = g.name;
  std::vector<signal> map( g.size() );
  map[0] = res.get_constant( false );
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    map[g.pis()[i]] = res.create_pi( g.pi_name( i ) );
  for ( node_id n = 0; n < g.size(); ++n )
  {
    if ( !live[n] || !g.is_and( n ) )
      continue;
    auto const a = g.fanin0( n );
    auto const b = g.fanin1( n );
    map[n] = res.create_and( map[a.node()] ^ a.complemented(), map[b.node()] ^ b.complemented() );
  }
  for ( auto const& po : g.pos() )
    res.create_po( map[po.driver.node()] ^ po.driver.complemented(), po.name );
  return res;
}

namespace detail
{
inline uint64_t mix64( uint64_t x )
{
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}
} // namespace detail

/*! \brief Per-node structural hashes, independent of node numbering and of
 * the fanin order of each AND. */
inline std::vector<uint64_t> structural_node_hashes( subject_graph const& g )
{
  std::vector<uint64_t> h( g.size(), 0u );
  h[0] = detail::mix64( 0x5bd1e995u );
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    h[g.pis()[i]] = detail::mix64( 0x100000000ull + i );
  for ( node_id n = 0; n < g.size(); ++n )
  {
    if ( !g.is_and( n ) )
      continue;
    auto const a = detail::mix64( h[g.fanin0( n ).node()] + g.fanin0( n ).complemented() );
    auto const b = detail::mix64( h[g.fanin1( n ).node()] + g.fanin1( n ).complemented() );
    h[n] = detail::mix64( std::min( a, b ) * 31u + std::max( a, b ) + 0x9e3779b97f4a7c15ull );
  }
  return h;
}

inline uint64_t structural_hash( subject_graph const& g )
{
  auto const h = structural_node_hashes( g );
  uint64_t acc = detail::mix64( g.num_pis() * 1000003ull + g.num_pos() );
  acc = detail::mix64( acc + g.num_gates() );
  for ( auto const& po : g.pos() )
    acc = detail::mix64( acc ^ ( h[po.driver.node()] + po.driver.complemented() ) );
  return acc;
}

} // namespace pbmap
