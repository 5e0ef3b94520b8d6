#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mapped_network.hpp"

namespace pbmap
{

struct balance_params
{
  /*! \brief Use the heights planned by cover extraction when available,
   * otherwise every gate fires as early as possible. */
  bool use_schedule{ true };
};

/*! \brief Balances a network without DFFs or splitters: every sink gets its
 * own DFF chain so that all fanins of a gate arrive together, and every PO is
 * padded to the largest PO height. */
inline mapped_network insert_balancing( mapped_network const& net, balance_params const& ps = {} )
{
  for ( auto const& inst : net.instances )
    if ( inst.kind == instance_kind::dff || inst.kind == instance_kind::splitter )
      throw internal_error( "insert_balancing expects a network without DFFs and splitters" );

  auto h = net.heights();
  if ( ps.use_schedule && net.schedule.size() == net.size() )
  {
    bool ok = true;
    for ( uint32_t i = 0; i < net.size() && ok; ++i )
      for ( auto f : net.instances[i].fanins )
        ok = ok && net.schedule[i] >= net.schedule[f] + 1u;
    if ( ok )
      h = net.schedule;
  }

  mapped_network res( net.library() );
  res.name = net.name;
  std::vector<uint32_t> map( net.size() );
  auto chain = [&]( uint32_t from, uint32_t length ) {
    for ( uint32_t k = 0; k < length; ++k )
      from = res.create_dff( from );
    return from;
  };

  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const& inst = net.instances[i];
    switch ( inst.kind )
    {
    case instance_kind::pi:
      map[i] = res.create_pi( net.pi_names[inst.aux] );
      break;
    case instance_kind::constant:
      map[i] = res.create_constant( inst.aux != 0u );
      break;
    default:
    {
      std::vector<uint32_t> fanins;
      for ( auto f : inst.fanins )
        fanins.push_back( chain( map[f], h[i] - 1u - h[f] ) );
      map[i] = res.create_gate( inst.cell, std::move( fanins ) );
    }
    }
  }

  uint32_t depth = 0;
  for ( auto const& po : net.pos )
    if ( net.instances[po.driver].kind != instance_kind::constant )
      depth = std::max( depth, h[po.driver] );
  for ( auto const& po : net.pos )
  {
    if ( net.instances[po.driver].kind == instance_kind::constant )
    {
      res.create_po( map[po.driver], po.name );
      continue;
    }
    auto const pad = depth - h[po.driver];
    res.po_pad_dffs += pad;
    res.create_po( chain( map[po.driver], pad ), po.name );
  }
  return res;
}

/*! \brief Logic gates on the longest path from each instance to a PO. */
inline std::vector<uint32_t> downstream_criticality( mapped_network const& net )
{
  auto const fo = net.fanouts();
  std::vector<uint32_t> crit( net.size(), 0u );
  for ( uint32_t i = net.size(); i-- > 0; )
  {
    uint32_t m = 0;
    for ( auto const& s : fo[i] )
      if ( !s.is_po() )
        m = std::max( m, crit[s.instance] );
    crit[i] = m + ( net.instances[i].kind == instance_kind::gate ? 1u : 0u );
  }
  return crit;
}

/*! \brief Replaces every multi-sink signal by a binary splitter tree with
 * f - 1 splitters. Sinks are merged Huffman-style on weight
 * 2^(criticality - min criticality), so more critical sinks end up closer to
 * the source. Constants are not split. */
inline mapped_network insert_splitters( mapped_network const& net )
{
  auto const fo = net.fanouts();
  auto const crit = downstream_criticality( net );

  /* sink criticality counts the sink itself: a PO is 0 */
  auto sink_crit = [&]( sink const& s ) { return s.is_po() ? 0u : crit[s.instance]; };

  /* logical sink: follow DFF chains down to the consuming gate or PO */
  auto logical_sink = [&]( sink s ) {
    while ( !s.is_po() && net.instances[s.instance].kind == instance_kind::dff && fo[s.instance].size() == 1u )
      s = fo[s.instance].front();
    return s;
  };

  mapped_network res( net.library() );
  res.name = net.name;
  res.po_pad_dffs = net.po_pad_dffs;

  std::vector<uint32_t> map( net.size(), UINT32_MAX );
  /* driver of (instance, pin) and of each PO after splitting */
  std::vector<std::vector<uint32_t>> pin_driver( net.size() );
  for ( uint32_t i = 0; i < net.size(); ++i )
    pin_driver[i].assign( net.instances[i].fanins.size(), UINT32_MAX );
  std::vector<uint32_t> po_driver( net.pos.size(), UINT32_MAX );
  std::vector<uint32_t> logical_id( net.size(), UINT32_MAX );

  auto assign = [&]( sink const& s, uint32_t d ) {
    if ( s.is_po() )
      po_driver[s.pin] = d;
    else
      pin_driver[s.instance][s.pin] = d;
  };

  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const& inst = net.instances[i];
    switch ( inst.kind )
    {
    case instance_kind::pi:
      map[i] = res.create_pi( net.pi_names[inst.aux] );
      break;
    case instance_kind::constant:
      map[i] = res.create_constant( inst.aux != 0u );
      break;
    case instance_kind::dff:
      map[i] = res.create_dff( pin_driver[i][0] );
      break;
    case instance_kind::splitter:
      throw internal_error( "insert_splitters expects a network without splitters" );
    case instance_kind::gate:
      map[i] = res.create_gate( inst.cell, pin_driver[i] );
      break;
    }
    logical_id[i] = map[i];

    auto const& sinks = fo[i];
    if ( sinks.size() <= 1u || inst.kind == instance_kind::constant )
    {
      for ( auto const& s : sinks )
        assign( s, map[i] );
      continue;
    }

    /* Huffman merge: tree nodes 0..f-1 are sinks, f.. are splitters */
    auto const f = static_cast<uint32_t>( sinks.size() );
    uint32_t cmin = UINT32_MAX;
    for ( auto const& s : sinks )
      cmin = std::min( cmin, sink_crit( s ) );
    using entry = std::pair<long double, uint32_t>;
    std::priority_queue<entry, std::vector<entry>, std::greater<entry>> pq;
    for ( uint32_t k = 0; k < f; ++k )
      pq.push( { std::ldexp( 1.0L, static_cast<int>( std::min( 60u, sink_crit( sinks[k] ) - cmin ) ) ), k } );
    std::vector<std::pair<uint32_t, uint32_t>> children;
    while ( pq.size() > 1u )
    {
      auto a = pq.top();
      pq.pop();
      auto b = pq.top();
      pq.pop();
      children.push_back( { a.second, b.second } );
      pq.push( { a.first + b.first, f + static_cast<uint32_t>( children.size() ) - 1u } );
    }

    splitter_tree st;
    st.source = map[i];
    st.num_splitters = f - 1u;
    st.sinks.resize( f );
    st.criticality.resize( f );
    st.depth.resize( f );

    /* materialize from the root down so splitters precede their sinks */
    std::vector<std::pair<uint32_t, std::pair<uint32_t, uint32_t>>> stack{ { pq.top().second, { map[i], 0u } } };
    while ( !stack.empty() )
    {
      auto [node, info] = stack.back();
      auto [driver, depth] = info;
      stack.pop_back();
      if ( node < f )
      {
        assign( sinks[node], driver );
        st.sinks[node] = logical_sink( sinks[node] );
        st.criticality[node] = sink_crit( sinks[node] );
        st.depth[node] = depth;
        continue;
      }
      auto const sp = res.create_splitter( driver );
      auto const [a, b] = children[node - f];
      stack.push_back( { b, { sp, depth + 1u } } );
      stack.push_back( { a, { sp, depth + 1u } } );
    }
    res.splitter_trees.push_back( std::move( st ) );
  }

  for ( uint32_t o = 0; o < net.pos.size(); ++o )
    res.create_po( po_driver[o], net.pos[o].name );

  /* sinks were recorded with old ids */
  for ( auto& st : res.splitter_trees )
    for ( auto& s : st.sinks )
      if ( !s.is_po() )
        s.instance = logical_id[s.instance];
  return res;
}

/*! \brief Empty if every gate sees equal fanin heights and every non-constant
 * PO sits at the same height, otherwise a description of the first violation. */
inline std::string check_balanced( mapped_network const& net )
{
  auto const h = net.heights();
  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const& inst = net.instances[i];
    if ( inst.kind != instance_kind::gate || inst.fanins.size() < 2u )
      continue;
    for ( auto f : inst.fanins )
      if ( h[f] != h[inst.fanins[0]] )
        return "instance " + std::to_string( i ) + " has fanins at heights " + std::to_string( h[inst.fanins[0]] ) + " and " + std::to_string( h[f] );
  }
  uint32_t depth = UINT32_MAX;
  for ( auto const& po : net.pos )
  {
    if ( net.instances[po.driver].kind == instance_kind::constant )
      continue;
    if ( depth == UINT32_MAX )
      depth = h[po.driver];
    else if ( h[po.driver] != depth )
      return "output " + po.name + " at height " + std::to_string( h[po.driver] ) + " instead of " + std::to_string( depth );
  }
  return {};
}

/*! \brief Length of every PI to PO path, by enumeration over a path-length
 * set per instance. Returns the distinct lengths seen. */
inline std::vector<uint32_t> path_lengths( mapped_network const& net )
{
  std::vector<std::vector<uint32_t>> len( net.size() );
  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const& inst = net.instances[i];
    if ( inst.kind == instance_kind::pi )
    {
      len[i] = { 0u };
      continue;
    }
    auto const step = ( inst.kind == instance_kind::gate || inst.kind == instance_kind::dff ) ? 1u : 0u;
    for ( auto f : inst.fanins )
      for ( auto l : len[f] )
        len[i].push_back( l + step );
    std::sort( len[i].begin(), len[i].end() );
    len[i].erase( std::unique( len[i].begin(), len[i].end() ), len[i].end() );
  }
  std::vector<uint32_t> all;
  for ( auto const& po : net.pos )
    all.insert( all.end(), len[po.driver].begin(), len[po.driver].end() );
  std::sort( all.begin(), all.end() );
  all.erase( std::unique( all.begin(), all.end() ), all.end() );
  return all;
}

/*! \brief Sinks per signal with splitters collapsed, for every non-splitter
 * instance. */
inline std::vector<uint32_t> logical_fanout_counts( mapped_network const& net )
{
  auto const fo = net.fanouts();
  std::vector<uint32_t> cnt( net.size(), 0u );
  for ( uint32_t i = net.size(); i-- > 0; )
  {
    if ( net.instances[i].kind == instance_kind::splitter )
      continue;
    std::vector<sink> stack( fo[i].begin(), fo[i].end() );
    while ( !stack.empty() )
    {
      auto s = stack.back();
      stack.pop_back();
      if ( !s.is_po() && net.instances[s.instance].kind == instance_kind::splitter )
        stack.insert( stack.end(), fo[s.instance].begin(), fo[s.instance].end() );
      else
        ++cnt[i];
    }
  }
  return cnt;
}

/*! \brief Empty if splitters are the only multi-sink instances (constants
 * aside), every splitter has exactly two sinks, and the splitter count equals
 * the sum of (fanout - 1) over logical signals. */
inline std::string check_splitters( mapped_network const& net )
{
  auto const fo = net.fanouts();
  auto const lf = logical_fanout_counts( net );
  uint64_t expected = 0;
  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const& inst = net.instances[i];
    if ( inst.kind == instance_kind::splitter )
    {
      if ( fo[i].size() != 2u )
        return "splitter " + std::to_string( i ) + " drives " + std::to_string( fo[i].size() ) + " sinks";
      continue;
    }
    if ( inst.kind == instance_kind::constant )
      continue;
    if ( fo[i].size() > 1u )
      return "instance " + std::to_string( i ) + " drives " + std::to_string( fo[i].size() ) + " sinks without a splitter";
    if ( lf[i] > 1u )
      expected += lf[i] - 1u;
  }
  if ( expected != net.num_splitters() )
    return "expected " + std::to_string( expected ) + " splitters, found " + std::to_string( net.num_splitters() );
  return {};
}

} // namespace pbmap
