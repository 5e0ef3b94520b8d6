#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cuts.hpp"
#include "errors.hpp"
#include "mapped_network.hpp"
#include "subject_graph.hpp"
#include "supergate.hpp"

namespace pbmap
{

inline constexpr uint32_t infinite_cost = std::numeric_limits<uint32_t>::max() / 4u;

/*! \brief DFFs needed to bring every leaf up to the highest one. */
inline uint64_t balance_cost( std::span<uint32_t const> leaf_levels )
{
  if ( leaf_levels.empty() )
    throw config_error( "balance_cost needs at least one level" );
  auto const m = *std::max_element( leaf_levels.begin(), leaf_levels.end() );
  uint64_t s = 0;
  for ( auto l : leaf_levels )
    s += m - l;
  return s;
}

/*! \brief Minimum DFFs needed to deliver a signal at exactly height T.
 *
 * Defined from `start` on; past the stored values the signal is padded with
 * one DFF per extra level, so at(T) <= at(T - 1) + 1 always holds.
 */
struct cost_curve
{
  uint32_t start{ 0 };
  std::vector<uint32_t> values;

  bool empty() const { return values.empty(); }

  /*! \brief Last height with a stored value. */
  uint32_t end() const { return start + static_cast<uint32_t>( values.size() ) - 1u; }

  uint32_t at( uint32_t t ) const
  {
    if ( values.empty() || t < start )
      return infinite_cost;
    auto const i = t - start;
    if ( i < values.size() )
      return values[i];
    return values.back() + ( i - static_cast<uint32_t>( values.size() ) + 1u );
  }

  uint32_t min_value() const { return values.empty() ? infinite_cost : *std::min_element( values.begin(), values.end() ); }

  /* drops trailing values that equal padding */
  void trim()
  {
    while ( values.size() >= 2u && values.back() == values[values.size() - 2u] + 1u )
      values.pop_back();
  }

  static cost_curve primary_input()
  {
    return { 0u, { 0u } };
  }
};

/*! \brief A supergate bound to a cut of a node in one output phase. */
struct match
{
  uint32_t cut_index{ 0 };
  uint32_t supergate{ UINT32_MAX };
  phase ph{ phase::positive };
  /*! \brief Bit i set when leaf i is used in its negative phase. */
  uint32_t leaf_phases{ 0 };
  /*! \brief Height the match fires at (the x of a match couple). */
  uint32_t height{ 0 };
  /*! \brief Total DFFs below and inside the match (the y). */
  uint32_t dffs{ 0 };
  double area{ 0.0 };
  uint32_t jj{ 0 };
};

/*! \brief A corner of the node cost curve with every match achieving it. */
struct frontier_point
{
  uint32_t height{ 0 };
  uint32_t dffs{ 0 };
  std::vector<match> candidates;
};

struct node_solution
{
  node_id node{ 0 };
  phase ph{ phase::positive };
  /*! \brief Corners sorted by height; no point is dominated after padding. */
  std::vector<frontier_point> pareto;
  cost_curve curve;
  match best;

  bool valid() const { return !pareto.empty(); }

  uint32_t opt() const
  {
    uint32_t m = infinite_cost;
    for ( auto const& p : pareto )
      m = std::min( m, p.dffs );
    return m;
  }
};

enum class mapping_objective
{
  dffs,
  dffs_depth,
  dffs_depth_area
};

struct map_params
{
  /*! \brief Corners kept per node. */
  uint32_t frontier_cap{ 8u };

  /*! \brief Matches kept per corner for the area pass. */
  uint32_t candidates_per_point{ 8u };

  /*! \brief Treat multi-fanout nodes as cover boundaries (DAG mode). */
  bool dag{ true };
};

struct map_stats
{
  uint64_t matches_evaluated{ 0 };
  uint32_t capped_nodes{ 0 };
};

/*! \brief Cut function with the leaves in mask complemented. */
inline truth_table flip_leaves( truth_table f, uint32_t num_vars, uint32_t mask )
{
  for ( uint32_t i = 0; i < num_vars; ++i )
    if ( ( mask >> i ) & 1u )
      f = tt_flip( f, i, num_vars );
  return f;
}

/*! \brief References to each node through complemented minus plain edges. */
inline std::vector<int32_t> complemented_reference_balance( subject_graph const& g )
{
  std::vector<int32_t> balance( g.size(), 0 );
  g.foreach_gate( [&]( node_id n ) {
    for ( auto f : { g.fanin0( n ), g.fanin1( n ) } )
      balance[f.node()] += f.complemented() ? 1 : -1;
  } );
  for ( auto const& po : g.pos() )
    balance[po.driver.node()] += po.driver.complemented() ? 1 : -1;
  return balance;
}

/*! \brief DP state: every AND node solved in both phases. */
struct mapping_solution
{
  subject_graph const* graph{ nullptr };
  network_cuts const* cuts{ nullptr };
  supergate_library const* sgl{ nullptr };
  map_params params;
  map_stats stats;

  std::array<std::vector<node_solution>, 2> nodes;
  std::vector<bool> shared;
  /*! \brief Phase a shared node is built in; its consumers use that one. */
  std::vector<phase> impl;
  /*! \brief Consumer view of shared nodes: cost above their own optimum. */
  std::vector<cost_curve> visible;

  /* set by the passes and read by extract_cover */
  bool depth_pass{ false };
  bool area_pass{ false };

  node_solution const& solution( node_id n, phase ph ) const { return nodes[static_cast<uint32_t>( ph )][n]; }
  node_solution& solution( node_id n, phase ph ) { return nodes[static_cast<uint32_t>( ph )][n]; }
};

namespace detail
{

class pb_mapper
{
public:
  pb_mapper( mapping_solution& sol ) : s_( sol ), g_( *sol.graph ), sgl_( *sol.sgl ) {}

  void run()
  {
    auto const fo = g_.fanout_counts();
    refs_ = complemented_reference_balance( g_ );
    for ( auto& v : s_.nodes )
      v.assign( g_.size(), {} );
    s_.shared.assign( g_.size(), false );
    s_.impl.assign( g_.size(), phase::positive );
    s_.visible.assign( g_.size(), {} );
    for ( node_id n = 0; n < g_.size(); ++n )
    {
      s_.nodes[0][n].node = s_.nodes[1][n].node = n;
      s_.nodes[1][n].ph = phase::negative;
      if ( !g_.is_and( n ) )
        continue;
      s_.shared[n] = s_.params.dag && fo[n] > 1u;
      solve_node( n );
    }
  }

  void solve_node( node_id n )
  {
    solve( n, phase::positive );
    solve( n, phase::negative );
    if ( !s_.shared[n] )
      return;
    /* shared nodes commit to the phase that arrives first, then cheaper */
    auto const& p = s_.solution( n, phase::positive );
    auto const& q = s_.solution( n, phase::negative );
    auto key = [&]( node_solution const& x, int32_t against ) { return std::make_tuple( x.curve.start, x.opt(), against ); };
    auto const neg = key( q, -refs_[n] ) < key( p, refs_[n] );
    s_.impl[n] = neg ? phase::negative : phase::positive;
    auto const& sol = neg ? q : p;
    auto const opt = sol.opt();
    auto vis = sol.curve;
    for ( auto& v : vis.values )
      v -= opt;
    s_.visible[n] = std::move( vis );
  }

  /* recomputes one phase of n from the current solutions of its cone */
  void solve( node_id n, phase ph )
  {
    auto& sol = s_.solution( n, ph );
    sol.pareto.clear();
    sol.curve = {};

    auto const& set = s_.cuts->cuts( n );
    auto& cands = cands_;
    cands_used_ = 0;
    for ( uint32_t ci = 0; ci < set.cuts.size(); ++ci )
    {
      auto const& c = set.cuts[ci];
      if ( c.is_trivial_of( n ) )
        continue;
      uint32_t fixed = 0, free = 0;
      for ( uint32_t i = 0; i < c.size(); ++i )
      {
        auto const l = c.leaf_data[i];
        if ( !g_.is_and( l ) )
          continue;
        if ( s_.shared[l] )
          fixed |= s_.impl[l] == phase::negative ? ( 1u << i ) : 0u;
        else
          free |= 1u << i;
      }
      for ( uint32_t sub = free;; sub = ( sub - 1u ) & free )
      {
        auto const mask = fixed | sub;
        for ( auto sg : boolean_match( sgl_, flip_leaves( c.function, c.size(), mask ), c.size(), ph ) )
          add_candidate( n, ci, sg, ph, mask );
        if ( sub == 0u )
          break;
      }
    }
    auto const used = std::span<std::pair<match, cost_curve> const>( cands.data(), cands_used_ );
    if ( used.empty() )
      throw internal_error( "no match for node " + std::to_string( n ) + "; supergate depth must be at least 2" );

    uint32_t lo = infinite_cost, hi = 0;
    for ( auto const& [m, cv] : used )
    {
      lo = std::min( lo, cv.start );
      hi = std::max( hi, cv.end() );
    }
    std::vector<uint32_t> env( hi - lo + 1u, infinite_cost );
    for ( auto const& [m, cv] : used )
      for ( uint32_t t = cv.start; t <= hi; ++t )
        env[t - lo] = std::min( env[t - lo], cv.at( t ) );
    for ( uint32_t i = 1; i < env.size(); ++i )
      env[i] = std::min( env[i], env[i - 1u] + 1u );

    std::vector<frontier_point> corners;
    for ( uint32_t i = 0; i < env.size(); ++i )
    {
      if ( env[i] >= infinite_cost || ( i > 0 && env[i] == env[i - 1u] + 1u ) )
        continue;
      frontier_point p;
      p.height = lo + i;
      p.dffs = env[i];
      for ( auto const& [m, cv] : used )
      {
        if ( cv.at( p.height ) != p.dffs )
          continue;
        auto mm = m;
        mm.height = p.height;
        mm.dffs = p.dffs;
        if ( p.candidates.size() < s_.params.candidates_per_point )
          p.candidates.push_back( mm );
      }
      corners.push_back( std::move( p ) );
    }

    if ( corners.size() > s_.params.frontier_cap )
    {
      ++s_.stats.capped_nodes;
      std::vector<uint32_t> order( corners.size() - 1u );
      std::iota( order.begin(), order.end(), 1u );
      std::stable_sort( order.begin(), order.end(), [&]( auto a, auto b ) { return corners[a].dffs < corners[b].dffs; } );
      order.resize( s_.params.frontier_cap - 1u );
      std::sort( order.begin(), order.end() );
      std::vector<frontier_point> kept{ std::move( corners[0] ) };
      for ( auto i : order )
        kept.push_back( std::move( corners[i] ) );
      corners = std::move( kept );
    }

    sol.pareto = std::move( corners );
    sol.curve = curve_from_corners( sol.pareto );
    sol.best = sol.pareto.front().candidates.front();
    for ( auto const& p : sol.pareto )
      if ( p.dffs < sol.best.dffs )
        sol.best = p.candidates.front();
  }

  static cost_curve curve_from_corners( std::vector<frontier_point> const& pts )
  {
    cost_curve cv;
    cv.start = pts.front().height;
    cv.values.assign( pts.back().height - cv.start + 1u, infinite_cost );
    for ( auto const& p : pts )
      cv.values[p.height - cv.start] = p.dffs;
    for ( uint32_t i = 1; i < cv.values.size(); ++i )
      cv.values[i] = std::min( cv.values[i], cv.values[i - 1u] + 1u );
    return cv;
  }

  cost_curve const& leaf_curve( node_id leaf, bool negative ) const
  {
    static cost_curve const pi_curve = cost_curve::primary_input();
    if ( !g_.is_and( leaf ) )
      return pi_curve;
    if ( s_.shared[leaf] )
      return s_.visible[leaf];
    return s_.solution( leaf, negative ? phase::negative : phase::positive ).curve;
  }

  /* cost curves of every gate in the supergate, root last */
  static std::vector<cost_curve> gate_curves( supergate const& sg, std::span<cost_curve const* const> leaves )
  {
    std::vector<cost_curve> cv;
    gate_curves( sg, leaves, cv );
    return cv;
  }

  /* same, reusing the storage of cv */
  static void gate_curves( supergate const& sg, std::span<cost_curve const* const> leaves, std::vector<cost_curve>& cv )
  {
    if ( cv.size() < sg.gates.size() )
      cv.resize( sg.gates.size() );
    for ( size_t i = 0; i < sg.gates.size(); ++i )
    {
      auto const& gt = sg.gates[i];
      std::array<cost_curve const*, 2> in{};
      for ( uint32_t j = 0; j < gt.num_fanins; ++j )
        in[j] = sg_is_var( gt.fanin[j] ) ? leaves[sg_var_of( gt.fanin[j] )] : &cv[gt.fanin[j]];
      uint32_t start = 0, end = 0;
      for ( uint32_t j = 0; j < gt.num_fanins; ++j )
      {
        start = std::max( start, in[j]->start + 1u );
        end = std::max( end, in[j]->end() + 1u );
      }
      auto& out = cv[i];
      out.start = start;
      out.values.resize( end - start + 1u );
      for ( uint32_t t = start; t <= end; ++t )
      {
        uint32_t v = 0;
        for ( uint32_t j = 0; j < gt.num_fanins; ++j )
          v += in[j]->at( t - 1u );
        if ( t > start )
          v = std::min( v, out.values[t - start - 1u] + 1u );
        out.values[t - start] = v;
      }
      out.trim();
    }
  }

  static cost_curve match_curve( supergate const& sg, std::span<cost_curve const* const> leaves )
  {
    return std::move( gate_curves( sg, leaves ).back() );
  }

  std::vector<cost_curve> match_gate_curves( node_id n, match const& m ) const
  {
    auto const& c = s_.cuts->cuts( n ).cuts[m.cut_index];
    std::array<cost_curve const*, max_tt_vars> leaves{};
    for ( uint32_t i = 0; i < c.size(); ++i )
      leaves[i] = &leaf_curve( c.leaf_data[i], ( m.leaf_phases >> i ) & 1u );
    return gate_curves( sgl_[m.supergate], std::span<cost_curve const* const>( leaves.data(), c.size() ) );
  }

private:
  void add_candidate( node_id n, uint32_t ci, uint32_t sg_id, phase ph, uint32_t mask )
  {
    ++s_.stats.matches_evaluated;
    auto const& c = s_.cuts->cuts( n ).cuts[ci];
    auto const& sg = sgl_[sg_id];
    std::array<cost_curve const*, max_tt_vars> leaves{};
    for ( uint32_t i = 0; i < c.size(); ++i )
    {
      leaves[i] = &leaf_curve( c.leaf_data[i], ( mask >> i ) & 1u );
      if ( leaves[i]->empty() )
        return;
    }
    gate_curves( sg, std::span<cost_curve const* const>( leaves.data(), c.size() ), scratch_ );
    if ( cands_used_ == cands_.size() )
      cands_.emplace_back();
    auto& [m, cv] = cands_[cands_used_++];
    cv.start = scratch_[sg.gates.size() - 1u].start;
    cv.values.assign( scratch_[sg.gates.size() - 1u].values.begin(), scratch_[sg.gates.size() - 1u].values.end() );
    m = match{};
    m.cut_index = ci;
    m.supergate = sg_id;
    m.ph = ph;
    m.leaf_phases = mask;
    m.area = sg.area;
    m.jj = sg.jj_count;
  }

  mapping_solution& s_;
  subject_graph const& g_;
  supergate_library const& sgl_;
  std::vector<int32_t> refs_;
  /* reused across solve calls */
  std::vector<std::pair<match, cost_curve>> cands_;
  size_t cands_used_{ 0 };
  std::vector<cost_curve> scratch_;
};

} // namespace detail

/*! \brief Cost curve of a supergate over leaves with the given curves. */
inline cost_curve match_cost_curve( supergate const& sg, std::span<cost_curve const* const> leaves )
{
  return detail::pb_mapper::match_curve( sg, leaves );
}

/*! \brief Cost curve of a match of node n recomputed from the stored
 * solutions of its leaves. */
inline cost_curve recompute_match_curve( mapping_solution& sol, node_id n, match const& m )
{
  return std::move( detail::pb_mapper( sol ).match_gate_curves( n, m ).back() );
}

inline mapping_solution map_dag( subject_graph const& g, network_cuts const& cuts, supergate_library const& sgl, map_params const& ps = {} )
{
  if ( ps.frontier_cap < 1u )
    throw config_error( "frontier cap must be at least 1" );
  if ( ps.candidates_per_point < 1u )
    throw config_error( "candidates per point must be at least 1" );
  if ( ps.dag && !cuts.params.stop_at_multi_fanout )
  {
    auto const fo = g.fanout_counts();
    for ( node_id n = 0; n < g.size(); ++n )
      if ( g.is_and( n ) && fo[n] > 1u )
        throw config_error( "DAG mapping needs cuts that stop at multi-fanout nodes" );
  }
  mapping_solution sol;
  sol.graph = &g;
  sol.cuts = &cuts;
  sol.sgl = &sgl;
  sol.params = ps;
  detail::pb_mapper( sol ).run();
  return sol;
}

/*! \brief DP mapping of a tree-shaped subject graph (no AND node has more
 * than one fanout). */
inline mapping_solution map_tree( subject_graph const& g, network_cuts const& cuts, supergate_library const& sgl, map_params ps = {} )
{
  auto const fo = g.fanout_counts();
  for ( node_id n = 0; n < g.size(); ++n )
    if ( g.is_and( n ) && fo[n] > 1u )
      throw config_error( "map_tree: node " + std::to_string( n ) + " has " + std::to_string( fo[n] ) + " fanouts" );
  ps.dag = false;
  return map_dag( g, cuts, sgl, ps );
}

/*! \brief Re-solves one phase of n, then every later node, used to probe how
 * a changed frontier propagates. */
inline void resolve_after( mapping_solution& sol, node_id n )
{
  detail::pb_mapper m( sol );
  for ( node_id v = n + 1u; v < sol.graph->size(); ++v )
    if ( sol.graph->is_and( v ) )
      m.solve_node( v );
}

/*! \brief Curve of the single output of a graph, inverter included when the
 * output polarity is not available. */
inline cost_curve output_cost_curve( mapping_solution const& sol, signal s )
{
  auto const& g = *sol.graph;
  auto const v = s.node();
  if ( g.is_constant( v ) )
    return cost_curve::primary_input();
  cost_curve cv;
  bool inverted = false;
  if ( g.is_pi( v ) )
  {
    cv = cost_curve::primary_input();
    inverted = s.complemented();
  }
  else if ( sol.shared[v] )
  {
    cv = sol.visible[v];
    inverted = s.complemented() != ( sol.impl[v] == phase::negative );
  }
  else
    cv = sol.solution( v, s.complemented() ? phase::negative : phase::positive ).curve;
  if ( inverted )
    ++cv.start;
  return cv;
}

/*! \brief Minimum DFFs over all heights of the single output. */
inline uint32_t root_opt( mapping_solution const& sol )
{
  if ( sol.graph->num_pos() != 1u )
    throw config_error( "root_opt needs exactly one output" );
  auto const s = sol.graph->pos()[0].driver;
  auto const cv = output_cost_curve( sol, s );
  auto m = cv.min_value();
  if ( sol.graph->is_and( s.node() ) && sol.shared[s.node()] )
    m += sol.solution( s.node(), sol.impl[s.node()] ).opt();
  return m;
}

/*! \brief Picks, per node, the lowest corner among those with optimal DFFs and
 * makes extraction prefer lower heights on ties. */
inline mapping_solution& minimize_depth( mapping_solution& sol )
{
  for ( auto& vec : sol.nodes )
  {
    for ( auto& s : vec )
    {
      if ( !s.valid() )
        continue;
      auto const opt = s.opt();
      for ( auto const& p : s.pareto )
      {
        if ( p.dffs == opt )
        {
          s.best = p.candidates.front();
          break;
        }
      }
    }
  }
  sol.depth_pass = true;
  return sol;
}

/*! \brief Orders the matches of every corner by area, JJ count and supergate
 * name, so that the cheapest one is used among matches tied on (dffs, height). */
inline mapping_solution& optimize_area( mapping_solution& sol )
{
  auto const& sgl = *sol.sgl;
  for ( auto& vec : sol.nodes )
  {
    for ( auto& s : vec )
    {
      for ( auto& p : s.pareto )
      {
        std::stable_sort( p.candidates.begin(), p.candidates.end(), [&]( match const& a, match const& b ) {
          if ( a.area != b.area )
            return a.area < b.area;
          if ( a.jj != b.jj )
            return a.jj < b.jj;
          return sgl[a.supergate].name < sgl[b.supergate].name;
        } );
        if ( p.height == s.best.height && p.dffs == s.best.dffs )
          s.best = p.candidates.front();
      }
    }
  }
  sol.area_pass = true;
  return sol;
}

namespace detail
{

struct cover_choice
{
  bool used{ false };
  uint32_t height{ 0 };
  match m;
  std::vector<uint32_t> fire;
};

/* Reverse-topological selection of matches from consumer requests. */
class cover_extractor
{
public:
  cover_extractor( mapping_solution const& sol ) : s_( sol ), g_( *sol.graph ), sgl_( *sol.sgl ) {}

  mapped_network run()
  {
    auto const& lib = *sgl_.lib;
    for ( uint32_t p = 0; p < 2u; ++p )
    {
      req_[p].assign( g_.size(), {} );
      choice_[p].assign( g_.size(), {} );
    }

    depth_ = choose_output_depth();
    std::vector<bool> inverted( g_.size(), false );
    for ( auto const& po : g_.pos() )
    {
      auto const v = po.driver.node();
      if ( !g_.is_and( v ) )
        continue;
      auto const p = built_phase( po.driver );
      if ( !mismatch( po.driver ) )
        req_[p][v].push_back( depth_ );
      else if ( !inverted[v] )
      {
        inverted[v] = true;
        req_[p][v].push_back( depth_ - 1u );
      }
    }

    for ( node_id v = g_.size(); v-- > 1; )
      if ( g_.is_and( v ) )
        for ( uint32_t p = 0; p < 2u; ++p )
          if ( !req_[p][v].empty() )
            select( v, p );

    /* instantiate in topological order */
    mapped_network net( lib );
    net.name = g_.name;
    std::vector<uint32_t> out[2], inv( g_.size(), UINT32_MAX );
    out[0].assign( g_.size(), UINT32_MAX );
    out[1].assign( g_.size(), UINT32_MAX );
    for ( uint32_t i = 0; i < g_.num_pis(); ++i )
      out[0][g_.pis()[i]] = net.create_pi( g_.pi_name( i ) );
    net.schedule.assign( net.size(), 0u );

    for ( node_id v = 0; v < g_.size(); ++v )
    {
      for ( uint32_t p = 0; p < 2u; ++p )
      {
        auto const& ch = choice_[p][v];
        if ( !g_.is_and( v ) || !ch.used )
          continue;
        auto const& c = s_.cuts->cuts( v ).cuts[ch.m.cut_index];
        auto const& sg = sgl_[ch.m.supergate];
        std::vector<uint32_t> gate_out( sg.gates.size() );
        for ( size_t i = 0; i < sg.gates.size(); ++i )
        {
          auto const& gt = sg.gates[i];
          std::vector<uint32_t> fanins;
          for ( uint32_t j = 0; j < gt.num_fanins; ++j )
          {
            if ( sg_is_var( gt.fanin[j] ) )
            {
              auto const var = sg_var_of( gt.fanin[j] );
              auto const leaf = c.leaf_data[var];
              auto const d = out[( ch.m.leaf_phases >> var ) & 1u][leaf];
              if ( d == UINT32_MAX )
                throw internal_error( "missing solution for leaf " + std::to_string( leaf ) + " of node " + std::to_string( v ) );
              fanins.push_back( d );
            }
            else
              fanins.push_back( gate_out[gt.fanin[j]] );
          }
          gate_out[i] = net.create_gate( gt.cell, std::move( fanins ) );
          net.schedule.push_back( ch.fire[i] );
        }
        out[p][v] = gate_out.back();
      }
    }

    uint32_t const0 = UINT32_MAX, const1 = UINT32_MAX;
    for ( auto const& po : g_.pos() )
    {
      auto const v = po.driver.node();
      auto const c = po.driver.complemented();
      if ( g_.is_constant( v ) )
      {
        auto& k = c ? const1 : const0;
        if ( k == UINT32_MAX )
        {
          k = net.create_constant( c );
          net.schedule.push_back( 0u );
        }
        net.create_po( k, po.name );
        continue;
      }
      auto const d = out[built_phase( po.driver )][v];
      if ( d == UINT32_MAX )
        throw internal_error( "missing solution for output " + po.name );
      if ( !mismatch( po.driver ) )
      {
        net.create_po( d, po.name );
        continue;
      }
      if ( inv[v] == UINT32_MAX )
      {
        inv[v] = net.create_gate( lib.inverter, { d } );
        net.schedule.push_back( g_.is_pi( v ) ? 1u : depth_ );
      }
      net.create_po( inv[v], po.name );
    }
    return net;
  }

private:
  /* phase in which the driver of s is built */
  uint32_t built_phase( signal s ) const
  {
    auto const v = s.node();
    if ( g_.is_pi( v ) )
      return 0u;
    if ( s_.shared[v] )
      return static_cast<uint32_t>( s_.impl[v] );
    return s.complemented() ? 1u : 0u;
  }

  /* the output needs an inverter after the built phase */
  bool mismatch( signal s ) const
  {
    return s.complemented() != ( built_phase( s ) == 1u );
  }

  /* depth with the lowest total estimated cost over all outputs */
  uint32_t choose_output_depth() const
  {
    uint32_t lo = 0, hi = 0;
    bool any = false;
    for ( auto const& po : g_.pos() )
    {
      if ( g_.is_constant( po.driver.node() ) )
        continue;
      any = true;
      auto const cv = output_cost_curve( s_, po.driver );
      lo = std::max( lo, cv.start );
      hi = std::max( hi, cv.end() );
    }
    if ( !any )
      return 0u;
    uint64_t best_cost = UINT64_MAX;
    uint32_t best = lo;
    for ( uint32_t d = lo; d <= hi; ++d )
    {
      uint64_t cost = 0;
      for ( auto const& po : g_.pos() )
        if ( !g_.is_constant( po.driver.node() ) )
          cost += output_cost_curve( s_, po.driver ).at( d );
      if ( cost < best_cost )
      {
        best_cost = cost;
        best = d;
      }
    }
    return best;
  }

  void select( node_id v, uint32_t p )
  {
    auto const& sol = s_.nodes[p][v];
    auto const& reqs = req_[p][v];
    if ( !sol.valid() )
      throw internal_error( "missing solution for node " + std::to_string( v ) );
    auto const tmin = *std::min_element( reqs.begin(), reqs.end() );

    frontier_point const* chosen = nullptr;
    uint64_t best_cost = UINT64_MAX;
    for ( auto const& pt : sol.pareto )
    {
      if ( pt.height > tmin )
        break;
      uint64_t cost = pt.dffs;
      for ( auto t : reqs )
        cost += t - pt.height;
      /* later corners win ties unless the depth pass asks for low heights */
      if ( cost < best_cost || ( cost == best_cost && !s_.depth_pass ) )
      {
        best_cost = cost;
        chosen = &pt;
      }
    }
    if ( !chosen )
      throw internal_error( "no feasible corner for node " + std::to_string( v ) + " at height " + std::to_string( tmin ) );

    auto& ch = choice_[p][v];
    ch.used = true;
    ch.height = chosen->height;
    ch.m = chosen->candidates.front();

    /* schedule the gates inside the supergate and request the leaves */
    auto const& c = s_.cuts->cuts( v ).cuts[ch.m.cut_index];
    auto const& sg = sgl_[ch.m.supergate];
    auto const curves = pb_mapper( const_cast<mapping_solution&>( s_ ) ).match_gate_curves( v, ch.m );

    std::vector<uint32_t> fire( sg.gates.size(), 0u );
    fire.back() = ch.height;
    for ( size_t i = sg.gates.size(); i-- > 0; )
    {
      auto const& gt = sg.gates[i];
      for ( uint32_t j = 0; j < gt.num_fanins; ++j )
      {
        auto const t = fire[i] - 1u;
        if ( sg_is_var( gt.fanin[j] ) )
        {
          auto const var = sg_var_of( gt.fanin[j] );
          auto const leaf = c.leaf_data[var];
          if ( g_.is_and( leaf ) )
            req_[( ch.m.leaf_phases >> var ) & 1u][leaf].push_back( t );
          continue;
        }
        auto const& cv = curves[gt.fanin[j]];
        uint32_t best_t = cv.start;
        uint64_t bc = UINT64_MAX;
        for ( uint32_t u = cv.start; u <= t; ++u )
        {
          uint64_t const cost = uint64_t( cv.at( u ) ) + ( t - u );
          if ( cost < bc || ( cost == bc && !s_.depth_pass ) )
          {
            bc = cost;
            best_t = u;
          }
        }
        fire[gt.fanin[j]] = best_t;
      }
    }
    ch.fire = std::move( fire );
  }

  mapping_solution const& s_;
  subject_graph const& g_;
  supergate_library const& sgl_;
  std::vector<std::vector<uint32_t>> req_[2];
  std::vector<cover_choice> choice_[2];
  uint32_t depth_{ 0 };
};

} // namespace detail

/*! \brief Instantiates the chosen matches from the outputs down. The result
 * has no DFFs or splitters yet. */
inline mapped_network extract_cover( mapping_solution const& sol )
{
  return detail::cover_extractor( sol ).run();
}

/*! \brief Classic delay-oriented mapping on the same cuts and supergates:
 * minimum arrival per node and phase, ties by area. Used as a reference. */
inline mapped_network map_depth_greedy( subject_graph const& g, network_cuts const& cuts, supergate_library const& sgl )
{
  auto const& lib = *sgl.lib;
  struct best_match
  {
    uint32_t arrival{ infinite_cost };
    double area{ 0.0 };
    uint32_t cut{ 0 };
    uint32_t sg{ UINT32_MAX };
    uint32_t mask{ 0 };
  };
  auto const fo = g.fanout_counts();
  auto const refs = complemented_reference_balance( g );
  std::vector<best_match> best[2];
  best[0].assign( g.size(), {} );
  best[1].assign( g.size(), {} );
  std::vector<phase> impl( g.size(), phase::positive );
  auto shared = [&]( node_id n ) { return fo[n] > 1u; };

  for ( node_id n = 0; n < g.size(); ++n )
  {
    if ( !g.is_and( n ) )
      continue;
    auto const& set = cuts.cuts( n );
    for ( uint32_t p = 0; p < 2u; ++p )
    {
      auto& b = best[p][n];
      for ( uint32_t ci = 0; ci < set.cuts.size(); ++ci )
      {
        auto const& c = set.cuts[ci];
        if ( c.is_trivial_of( n ) )
          continue;
        uint32_t fixed = 0, free = 0;
        for ( uint32_t i = 0; i < c.size(); ++i )
        {
          auto const l = c.leaf_data[i];
          if ( !g.is_and( l ) )
            continue;
          if ( shared( l ) )
            fixed |= impl[l] == phase::negative ? ( 1u << i ) : 0u;
          else
            free |= 1u << i;
        }
        for ( uint32_t sub = free;; sub = ( sub - 1u ) & free )
        {
          auto const mask = fixed | sub;
          for ( auto sg_id : boolean_match( sgl, flip_leaves( c.function, c.size(), mask ), c.size(), static_cast<phase>( p ) ) )
          {
            auto const& sg = sgl[sg_id];
            uint32_t arr = 0;
            for ( uint32_t i = 0; i < c.size(); ++i )
            {
              auto const leaf = c.leaf_data[i];
              arr = std::max( arr, ( g.is_and( leaf ) ? best[( mask >> i ) & 1u][leaf].arrival : 0u ) + sg.pin_depth[i] );
            }
            if ( arr < b.arrival || ( arr == b.arrival && sg.area < b.area ) )
              b = { arr, sg.area, ci, sg_id, mask };
          }
          if ( sub == 0u )
            break;
        }
      }
      if ( b.sg == UINT32_MAX )
        throw internal_error( "no match for node " + std::to_string( n ) );
    }
    if ( shared( n ) )
    {
      auto const kp = std::make_tuple( best[0][n].arrival, best[0][n].area, refs[n] );
      auto const kn = std::make_tuple( best[1][n].arrival, best[1][n].area, -refs[n] );
      impl[n] = kn < kp ? phase::negative : phase::positive;
    }
  }

  auto built = [&]( signal s ) -> uint32_t {
    auto const v = s.node();
    if ( g.is_pi( v ) )
      return 0u;
    if ( shared( v ) )
      return static_cast<uint32_t>( impl[v] );
    return s.complemented() ? 1u : 0u;
  };

  std::vector<bool> used[2];
  used[0].assign( g.size(), false );
  used[1].assign( g.size(), false );
  for ( auto const& po : g.pos() )
    if ( g.is_and( po.driver.node() ) )
      used[built( po.driver )][po.driver.node()] = true;
  for ( node_id v = g.size(); v-- > 1; )
  {
    for ( uint32_t p = 0; p < 2u; ++p )
    {
      if ( !used[p][v] )
        continue;
      auto const& b = best[p][v];
      auto const& c = cuts.cuts( v ).cuts[b.cut];
      for ( uint32_t i = 0; i < c.size(); ++i )
        if ( g.is_and( c.leaf_data[i] ) )
          used[( b.mask >> i ) & 1u][c.leaf_data[i]] = true;
    }
  }

  mapped_network net( lib );
  net.name = g.name;
  std::vector<uint32_t> out[2], inv( g.size(), UINT32_MAX );
  out[0].assign( g.size(), UINT32_MAX );
  out[1].assign( g.size(), UINT32_MAX );
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    out[0][g.pis()[i]] = net.create_pi( g.pi_name( i ) );
  for ( node_id v = 0; v < g.size(); ++v )
  {
    for ( uint32_t p = 0; p < 2u; ++p )
    {
      if ( !g.is_and( v ) || !used[p][v] )
        continue;
      auto const& b = best[p][v];
      auto const& c = cuts.cuts( v ).cuts[b.cut];
      auto const& sg = sgl[b.sg];
      std::vector<uint32_t> gate_out( sg.gates.size() );
      for ( size_t i = 0; i < sg.gates.size(); ++i )
      {
        auto const& gt = sg.gates[i];
        std::vector<uint32_t> fanins;
        for ( uint32_t j = 0; j < gt.num_fanins; ++j )
        {
          if ( !sg_is_var( gt.fanin[j] ) )
          {
            fanins.push_back( gate_out[gt.fanin[j]] );
            continue;
          }
          auto const var = sg_var_of( gt.fanin[j] );
          auto const d = out[( b.mask >> var ) & 1u][c.leaf_data[var]];
          if ( d == UINT32_MAX )
            throw internal_error( "missing reference solution below node " + std::to_string( v ) );
          fanins.push_back( d );
        }
        gate_out[i] = net.create_gate( gt.cell, std::move( fanins ) );
      }
      out[p][v] = gate_out.back();
    }
  }
  uint32_t const0 = UINT32_MAX, const1 = UINT32_MAX;
  for ( auto const& po : g.pos() )
  {
    auto const v = po.driver.node();
    auto const c = po.driver.complemented();
    if ( g.is_constant( v ) )
    {
      auto& k = c ? const1 : const0;
      if ( k == UINT32_MAX )
        k = net.create_constant( c );
      net.create_po( k, po.name );
      continue;
    }
    auto const p = built( po.driver );
    if ( c == ( p == 1u ) )
    {
      net.create_po( out[p][v], po.name );
      continue;
    }
    if ( inv[v] == UINT32_MAX )
      inv[v] = net.create_gate( lib.inverter, { out[p][v] } );
    net.create_po( inv[v], po.name );
  }
  return net;
}

} // namespace pbmap
