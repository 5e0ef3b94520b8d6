#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "subject_graph.hpp"
#include "truth_table.hpp"

namespace pbmap
{

/*! \brief A cut: sorted leaves plus the root function over them. */
struct cut
{
  std::array<node_id, max_tt_vars> leaf_data{};
  uint8_t num_leaves{ 0 };
  truth_table function{ 0 };
  uint64_t signature{ 0 };

  std::span<node_id const> leaves() const { return { leaf_data.data(), num_leaves }; }
  uint32_t size() const { return num_leaves; }

  bool is_trivial_of( node_id root ) const { return num_leaves == 1u && leaf_data[0] == root; }

  bool operator==( cut const& o ) const
  {
    return num_leaves == o.num_leaves && std::equal( leaf_data.begin(), leaf_data.begin() + num_leaves, o.leaf_data.begin() );
  }

  /* true if every leaf of this cut is a leaf of o */
  bool subset_of( cut const& o ) const
  {
    if ( num_leaves > o.num_leaves || ( signature & ~o.signature ) != 0 )
      return false;
    return std::includes( o.leaf_data.begin(), o.leaf_data.begin() + o.num_leaves, leaf_data.begin(), leaf_data.begin() + num_leaves );
  }
};

inline uint64_t leaf_signature( node_id n )
{
  return uint64_t( 1 ) << ( n % 64u );
}

inline cut make_trivial_cut( node_id n )
{
  cut c;
  c.leaf_data[0] = n;
  c.num_leaves = 1;
  c.signature = leaf_signature( n );
  c.function = tt_var( 0, 1 );
  return c;
}

struct cut_set
{
  node_id root{ 0 };
  /*! \brief Trivial cut first, then by (size, leaves). */
  std::vector<cut> cuts;
};

struct cut_params
{
  /*! \brief Maximum number of leaves (2..6). */
  uint32_t cut_size{ 5u };

  /*! \brief Maximum number of cuts kept per node, trivial cut included. */
  uint32_t cut_limit{ 250u };

  /*! \brief Drop cuts whose leaf set contains another cut of the same node. */
  bool prune_dominated{ true };

  /*! \brief Nodes with more than one fanout contribute only their trivial cut
   * to their fanouts (cover boundaries for the DAG mapper). */
  bool stop_at_multi_fanout{ false };
};

struct cut_stats
{
  uint64_t total_cuts{ 0 };
  uint64_t truncated_nodes{ 0 };
  uint64_t dropped_cuts{ 0 };
};

class network_cuts
{
public:
  std::vector<cut_set> sets;
  cut_params params;
  cut_stats stats;

  cut_set const& cuts( node_id n ) const { return sets[n]; }
  cut_set& cuts( node_id n ) { return sets[n]; }
};

namespace detail
{

inline bool merge_leaves( cut const& a, cut const& b, uint32_t k, cut& res )
{
  uint32_t i = 0, j = 0, n = 0;
  while ( i < a.num_leaves || j < b.num_leaves )
  {
    node_id next;
    if ( j == b.num_leaves || ( i < a.num_leaves && a.leaf_data[i] < b.leaf_data[j] ) )
      next = a.leaf_data[i++];
    else if ( i == a.num_leaves || b.leaf_data[j] < a.leaf_data[i] )
      next = b.leaf_data[j++];
    else
    {
      next = a.leaf_data[i++];
      ++j;
    }
    if ( n == k )
      return false;
    res.leaf_data[n++] = next;
  }
  res.num_leaves = static_cast<uint8_t>( n );
  res.signature = a.signature | b.signature;
  return true;
}

inline bool cut_order( cut const& a, cut const& b )
{
  if ( a.num_leaves != b.num_leaves )
    return a.num_leaves < b.num_leaves;
  return std::lexicographical_compare( a.leaf_data.begin(), a.leaf_data.begin() + a.num_leaves,
                                       b.leaf_data.begin(), b.leaf_data.begin() + b.num_leaves );
}

struct cut_hash
{
  size_t operator()( cut const& c ) const
  {
    uint64_t h = c.num_leaves;
    for ( uint32_t i = 0; i < c.num_leaves; ++i )
      h = mix64( h * 1000003u + c.leaf_data[i] );
    return static_cast<size_t>( h );
  }
};

} // namespace detail

/*! \brief Enumerates k-feasible cuts by merging fanin cut sets in
 * topological order. Cut functions are left empty, see
 * compute_cut_functions. */
inline network_cuts enumerate_cuts( subject_graph const& g, cut_params const& ps = {} )
{
  if ( ps.cut_size < 2u || ps.cut_size > max_tt_vars )
    throw config_error( "cut size must be in [2, 6], got " + std::to_string( ps.cut_size ) );
  if ( ps.cut_limit < 2u )
    throw config_error( "cut limit must be at least 2" );

  network_cuts res;
  res.params = ps;
  res.sets.resize( g.size() );
  std::vector<uint32_t> fanouts;
  if ( ps.stop_at_multi_fanout )
    fanouts = g.fanout_counts();

  std::vector<cut> trivial_only( 1 );
  std::vector<cut> candidates;
  std::unordered_set<cut, detail::cut_hash> seen;

  for ( node_id n = 0; n < g.size(); ++n )
  {
    auto& set = res.sets[n];
    set.root = n;
    set.cuts.clear();
    auto const triv = make_trivial_cut( n );
    if ( !g.is_and( n ) )
    {
      set.cuts.push_back( triv );
      ++res.stats.total_cuts;
      continue;
    }

    auto fanin_cuts = [&]( node_id f ) -> std::vector<cut> const& {
      if ( ps.stop_at_multi_fanout && fanouts[f] > 1u )
      {
        trivial_only[0] = make_trivial_cut( f );
        return trivial_only;
      }
      return res.sets[f].cuts;
    };

    auto const a = g.fanin0( n ).node(), b = g.fanin1( n ).node();
    std::vector<cut> const ca = fanin_cuts( a );
    auto const& cb = fanin_cuts( b );

    candidates.clear();
    seen.clear();
    cut merged;
    for ( auto const& x : ca )
    {
      for ( auto const& y : cb )
      {
        if ( __builtin_popcountll( x.signature | y.signature ) > static_cast<int>( ps.cut_size ) )
          continue;
        if ( !detail::merge_leaves( x, y, ps.cut_size, merged ) )
          continue;
        if ( seen.insert( merged ).second )
          candidates.push_back( merged );
      }
    }

    std::sort( candidates.begin(), candidates.end(), detail::cut_order );
    if ( ps.prune_dominated )
    {
      /* candidates are sorted by size, so a dominating cut always comes first */
      std::vector<cut> kept;
      for ( auto const& c : candidates )
      {
        bool dominated = false;
        for ( auto const& k : kept )
        {
          if ( k.num_leaves >= c.num_leaves )
            break;
          if ( k.subset_of( c ) )
          {
            dominated = true;
            break;
          }
        }
        if ( !dominated )
          kept.push_back( c );
      }
      candidates.swap( kept );
    }

    set.cuts.push_back( triv );
    auto const room = ps.cut_limit - 1u;
    if ( candidates.size() > room )
    {
      ++res.stats.truncated_nodes;
      res.stats.dropped_cuts += candidates.size() - room;
      candidates.resize( room );
    }
    set.cuts.insert( set.cuts.end(), candidates.begin(), candidates.end() );
    res.stats.total_cuts += set.cuts.size();
  }
  return res;
}

/*! \brief Simulates the cone between root and leaves on leaf projections. */
inline truth_table simulate_cut( subject_graph const& g, node_id root, cut const& c,
                                 std::vector<truth_table>& values, std::vector<uint32_t>& stamp, uint32_t mark )
{
  auto const n = c.size();
  for ( uint32_t i = 0; i < n; ++i )
  {
    values[c.leaf_data[i]] = tt_var( i, n );
    stamp[c.leaf_data[i]] = mark;
  }
  /* iterative post-order over the cone */
  std::vector<node_id> stack{ root };
  while ( !stack.empty() )
  {
    auto const v = stack.back();
    if ( stamp[v] == mark )
    {
      stack.pop_back();
      continue;
    }
    if ( !g.is_and( v ) )
    {
      if ( g.is_constant( v ) )
      {
        values[v] = 0u;
        stamp[v] = mark;
        stack.pop_back();
        continue;
      }
      throw internal_error( "cut of node " + std::to_string( root ) + " does not cover PI " + std::to_string( v ) );
    }
    auto const a = g.fanin0( v ), b = g.fanin1( v );
    bool ready = true;
    if ( stamp[a.node()] != mark )
    {
      stack.push_back( a.node() );
      ready = false;
    }
    if ( stamp[b.node()] != mark )
    {
      stack.push_back( b.node() );
      ready = false;
    }
    if ( !ready )
      continue;
    auto const va = a.complemented() ? ~values[a.node()] : values[a.node()];
    auto const vb = b.complemented() ? ~values[b.node()] : values[b.node()];
    values[v] = va & vb & tt_mask( n );
    stamp[v] = mark;
    stack.pop_back();
  }
  return values[root] & tt_mask( n );
}

inline void compute_cut_functions( subject_graph const& g, network_cuts& cuts )
{
  std::vector<truth_table> values( g.size() );
  std::vector<uint32_t> stamp( g.size(), 0u );
  uint32_t mark = 0;
  for ( node_id n = 0; n < g.size(); ++n )
  {
    for ( auto& c : cuts.sets[n].cuts )
    {
      if ( c.is_trivial_of( n ) )
      {
        c.function = tt_var( 0, 1 );
        continue;
      }
      c.function = simulate_cut( g, n, c, values, stamp, ++mark );
    }
  }
}

inline std::string dump_cuts( network_cuts const& cuts )
{
  std::ostringstream os;
  for ( auto const& set : cuts.sets )
  {
    for ( auto const& c : set.cuts )
    {
      os << "node " << set.root << ": {";
      for ( uint32_t i = 0; i < c.size(); ++i )
        os << ( i ? ", " : "" ) << c.leaf_data[i];
      os << "} tt=" << tt_to_hex( c.function, c.size() ) << "\n";
    }
  }
  return os.str();
}

} // namespace pbmap
