#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mapped_network.hpp"
#include "mapper.hpp"
#include "supergate.hpp"

namespace pbmap
{

struct retime_params
{
  /*! \brief Allow registers to move across splitters. */
  bool cross_splitters{ true };
};

struct retime_stats
{
  uint64_t dffs_before{ 0 };
  uint64_t dffs_after{ 0 };
  uint32_t vertices{ 0 };
  uint32_t edges{ 0 };
};

/*! \brief Registers between two non-DFF instances; vertex 0 is the host that
 * stands for all PIs and POs. */
struct retiming_edge
{
  uint32_t from;
  uint32_t to;
  int64_t weight;
  /* consumer instance and pin, or PO index when to == 0 */
  uint32_t instance;
  uint32_t pin;
};

struct retiming_graph
{
  /*! \brief Instance of each vertex (UINT32_MAX for the host). */
  std::vector<uint32_t> vertex_instance;
  std::vector<uint32_t> vertex_of;
  std::vector<retiming_edge> edges;
  /*! \brief Pairs (a, b, c) meaning r(a) - r(b) <= c besides the edges. */
  std::vector<std::tuple<uint32_t, uint32_t, int64_t>> extra;
};

inline retiming_graph build_retiming_graph( mapped_network const& net, retime_params const& ps = {} )
{
  retiming_graph rg;
  rg.vertex_instance.push_back( UINT32_MAX );
  rg.vertex_of.assign( net.size(), UINT32_MAX );
  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const k = net.instances[i].kind;
    if ( k == instance_kind::pi )
      rg.vertex_of[i] = 0u;
    else if ( k == instance_kind::gate || k == instance_kind::splitter )
    {
      rg.vertex_of[i] = static_cast<uint32_t>( rg.vertex_instance.size() );
      rg.vertex_instance.push_back( i );
    }
  }

  auto trace = [&]( uint32_t d, int64_t& w ) {
    w = 0;
    while ( net.instances[d].kind == instance_kind::dff )
    {
      ++w;
      d = net.instances[d].fanins[0];
    }
    return d;
  };

  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const v = rg.vertex_of[i];
    if ( v == UINT32_MAX || v == 0u )
      continue;
    auto const& inst = net.instances[i];
    for ( uint32_t p = 0; p < inst.fanins.size(); ++p )
    {
      int64_t w;
      auto const src = trace( inst.fanins[p], w );
      if ( rg.vertex_of[src] == UINT32_MAX )
        throw internal_error( "constant inside logic is not supported by retiming" );
      rg.edges.push_back( { rg.vertex_of[src], v, w, i, p } );
    }
    if ( !ps.cross_splitters && inst.kind == instance_kind::splitter )
    {
      rg.extra.emplace_back( v, 0u, 0 );
      rg.extra.emplace_back( 0u, v, 0 );
    }
  }
  for ( uint32_t o = 0; o < net.pos.size(); ++o )
  {
    int64_t w;
    auto const src = trace( net.pos[o].driver, w );
    if ( rg.vertex_of[src] == UINT32_MAX )
      continue; /* constant output */
    rg.edges.push_back( { rg.vertex_of[src], 0u, w, UINT32_MAX, o } );
  }
  return rg;
}

namespace detail
{

/* Successive shortest paths with Dijkstra on reduced costs. Arcs are
 * uncapacitated except the source and sink arcs. */
class min_cost_flow
{
public:
  static constexpr int64_t inf = std::numeric_limits<int64_t>::max() / 4;

  struct arc
  {
    uint32_t to;
    int64_t cap;
    int64_t cost;
  };

  explicit min_cost_flow( uint32_t n ) : adj_( n ) {}

  uint32_t add_arc( uint32_t from, uint32_t to, int64_t cap, int64_t cost )
  {
    auto const id = static_cast<uint32_t>( arcs_.size() );
    arcs_.push_back( { to, cap, cost } );
    adj_[from].push_back( id );
    arcs_.push_back( { from, 0, -cost } );
    adj_[to].push_back( id + 1u );
    return id;
  }

  /* returns the flow value sent from s to t */
  int64_t run( uint32_t s, uint32_t t )
  {
    auto const n = static_cast<uint32_t>( adj_.size() );
    std::vector<int64_t> pot( n, 0 ), dist( n );
    std::vector<uint32_t> prev_arc( n );
    std::vector<bool> done( n );
    int64_t flow = 0;
    using item = std::pair<int64_t, uint32_t>;
    while ( true )
    {
      std::fill( dist.begin(), dist.end(), inf );
      std::fill( done.begin(), done.end(), false );
      std::priority_queue<item, std::vector<item>, std::greater<item>> pq;
      dist[s] = 0;
      pq.push( { 0, s } );
      while ( !pq.empty() )
      {
        auto [d, u] = pq.top();
        pq.pop();
        if ( done[u] )
          continue;
        done[u] = true;
        for ( auto id : adj_[u] )
        {
          auto const& a = arcs_[id];
          if ( a.cap <= 0 )
            continue;
          auto const nd = d + a.cost + pot[u] - pot[a.to];
          if ( nd < dist[a.to] )
          {
            dist[a.to] = nd;
            prev_arc[a.to] = id;
            pq.push( { nd, a.to } );
          }
        }
      }
      if ( !done[t] )
        break;
      for ( uint32_t v = 0; v < n; ++v )
        if ( done[v] )
          pot[v] += dist[v] - dist[t];
      int64_t push = inf;
      for ( auto v = t; v != s; v = arcs_[prev_arc[v] ^ 1u].to )
        push = std::min( push, arcs_[prev_arc[v]].cap );
      for ( auto v = t; v != s; v = arcs_[prev_arc[v] ^ 1u].to )
      {
        arcs_[prev_arc[v]].cap -= push;
        arcs_[prev_arc[v] ^ 1u].cap += push;
      }
      flow += push;
    }
    return flow;
  }

  /* shortest distances over residual arcs among the first n nodes, from a
   * virtual root joined to all of them with cost 0 */
  std::vector<int64_t> residual_distances( uint32_t n ) const
  {
    std::vector<int64_t> d( n, 0 );
    std::vector<uint32_t> relax( n, 0u );
    std::vector<bool> queued( n, true );
    std::deque<uint32_t> q;
    for ( uint32_t v = 0; v < n; ++v )
      q.push_back( v );
    while ( !q.empty() )
    {
      auto const u = q.front();
      q.pop_front();
      queued[u] = false;
      for ( auto id : adj_[u] )
      {
        auto const& a = arcs_[id];
        if ( a.cap <= 0 || a.to >= n )
          continue;
        if ( d[u] + a.cost < d[a.to] )
        {
          d[a.to] = d[u] + a.cost;
          if ( ++relax[a.to] > n + 1u )
            throw internal_error( "negative cycle in retiming residual graph" );
          if ( !queued[a.to] )
          {
            queued[a.to] = true;
            q.push_back( a.to );
          }
        }
      }
    }
    return d;
  }

private:
  std::vector<arc> arcs_;
  std::vector<std::vector<uint32_t>> adj_;
};

} // namespace detail

/*! \brief Retiming labels minimizing the total register count with the
 * host pinned at 0. */
inline std::vector<int64_t> min_register_labels( retiming_graph const& rg )
{
  auto const n = static_cast<uint32_t>( rg.vertex_instance.size() );
  std::vector<int64_t> c( n, 0 );
  detail::min_cost_flow mcf( n + 2u );
  auto const inf = detail::min_cost_flow::inf;
  for ( auto const& e : rg.edges )
  {
    if ( e.from == e.to )
      continue;
    mcf.add_arc( e.from, e.to, inf, e.weight );
    ++c[e.to];
    --c[e.from];
  }
  for ( auto const& [a, b, cost] : rg.extra )
    mcf.add_arc( a, b, inf, cost );
  auto const s = n, t = n + 1u;
  int64_t demand = 0;
  for ( uint32_t v = 0; v < n; ++v )
  {
    if ( c[v] < 0 )
      mcf.add_arc( s, v, -c[v], 0 );
    else if ( c[v] > 0 )
    {
      mcf.add_arc( v, t, c[v], 0 );
      demand += c[v];
    }
  }
  if ( mcf.run( s, t ) != demand )
    throw internal_error( "retiming flow is infeasible" );
  auto const d = mcf.residual_distances( n );
  std::vector<int64_t> r( n );
  for ( uint32_t v = 0; v < n; ++v )
    r[v] = d[0] - d[v];
  return r;
}

/*! \brief Moves registers to minimize the DFF count while keeping every
 * PI to PO latency. The network must be balanced. */
inline mapped_network retime_min_registers( mapped_network const& net, retime_params const& ps = {}, retime_stats* st = nullptr )
{
  auto const rg = build_retiming_graph( net, ps );
  auto const r = min_register_labels( rg );

  mapped_network res( net.library() );
  res.name = net.name;
  std::vector<uint32_t> map( net.size(), UINT32_MAX );
  auto chain = [&]( uint32_t from, int64_t length ) {
    if ( length < 0 )
      throw internal_error( "illegal retiming" );
    for ( int64_t k = 0; k < length; ++k )
      from = res.create_dff( from );
    return from;
  };

  /* edges grouped by consumer instance */
  std::vector<std::vector<uint32_t>> in_edges( net.size() );
  std::vector<uint32_t> po_edge( net.pos.size(), UINT32_MAX );
  for ( uint32_t e = 0; e < rg.edges.size(); ++e )
  {
    if ( rg.edges[e].instance == UINT32_MAX )
      po_edge[rg.edges[e].pin] = e;
    else
      in_edges[rg.edges[e].instance].push_back( e );
  }
  auto source_instance = [&]( uint32_t d ) {
    while ( net.instances[d].kind == instance_kind::dff )
      d = net.instances[d].fanins[0];
    return d;
  };
  auto retimed = [&]( retiming_edge const& e ) { return e.weight + r[e.to] - r[e.from]; };

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
      break;
    case instance_kind::gate:
    case instance_kind::splitter:
    {
      std::vector<uint32_t> fanins( inst.fanins.size() );
      for ( auto e : in_edges[i] )
        fanins[rg.edges[e].pin] = chain( map[source_instance( inst.fanins[rg.edges[e].pin] )], retimed( rg.edges[e] ) );
      if ( inst.kind == instance_kind::gate )
        map[i] = res.create_gate( inst.cell, std::move( fanins ) );
      else
        map[i] = res.create_splitter( fanins[0] );
      break;
    }
    }
  }
  for ( uint32_t o = 0; o < net.pos.size(); ++o )
  {
    auto const src = map[source_instance( net.pos[o].driver )];
    if ( po_edge[o] == UINT32_MAX )
    {
      res.create_po( src, net.pos[o].name );
      continue;
    }
    auto const w = retimed( rg.edges[po_edge[o]] );
    res.po_pad_dffs += static_cast<uint32_t>( w );
    res.create_po( chain( src, w ), net.pos[o].name );
  }

  res.splitter_trees = net.splitter_trees;
  for ( auto& t : res.splitter_trees )
  {
    t.source = map[t.source];
    for ( auto& s : t.sinks )
      if ( !s.is_po() )
        s.instance = map[s.instance];
  }

  if ( res.num_dffs() > net.num_dffs() )
    throw internal_error( "retiming increased the register count" );
  if ( st )
  {
    st->dffs_before = net.num_dffs();
    st->dffs_after = res.num_dffs();
    st->vertices = static_cast<uint32_t>( rg.vertex_instance.size() );
    st->edges = static_cast<uint32_t>( rg.edges.size() );
  }
  return res;
}

/*! \brief DFFs inside a match whose leaves arrive at fixed heights, with the
 * root firing as early as possible and registers pushed to the inputs. */
inline uint32_t retimed_match_dffs( supergate const& sg, std::span<uint32_t const> leaf_heights )
{
  if ( leaf_heights.size() != sg.num_vars )
    throw config_error( "expected " + std::to_string( sg.num_vars ) + " leaf heights" );
  std::vector<cost_curve> leaves;
  leaves.reserve( leaf_heights.size() );
  for ( auto h : leaf_heights )
    leaves.push_back( { h, { 0u } } );
  std::vector<cost_curve const*> ptr;
  for ( auto const& l : leaves )
    ptr.push_back( &l );
  auto const cv = match_cost_curve( sg, ptr );
  return cv.at( cv.start );
}

/*! \brief Same count with every gate firing as late as the root allows. */
inline uint32_t unretimed_match_dffs( supergate const& sg, std::span<uint32_t const> leaf_heights )
{
  if ( leaf_heights.size() != sg.num_vars )
    throw config_error( "expected " + std::to_string( sg.num_vars ) + " leaf heights" );
  std::vector<uint32_t> asap( sg.gates.size() ), fire( sg.gates.size() );
  auto in_time = [&]( int8_t ref ) { return sg_is_var( ref ) ? leaf_heights[sg_var_of( ref )] : asap[ref]; };
  for ( size_t i = 0; i < sg.gates.size(); ++i )
  {
    uint32_t m = 0;
    for ( uint32_t j = 0; j < sg.gates[i].num_fanins; ++j )
      m = std::max( m, in_time( sg.gates[i].fanin[j] ) );
    asap[i] = m + 1u;
  }
  fire.back() = asap.back();
  uint32_t dffs = 0;
  for ( size_t i = sg.gates.size(); i-- > 0; )
  {
    for ( uint32_t j = 0; j < sg.gates[i].num_fanins; ++j )
    {
      auto const ref = sg.gates[i].fanin[j];
      if ( sg_is_var( ref ) )
        dffs += fire[i] - 1u - leaf_heights[sg_var_of( ref )];
      else
        fire[ref] = fire[i] - 1u;
    }
  }
  return dffs;
}

} // namespace pbmap
