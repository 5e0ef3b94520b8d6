#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "balance.hpp"
#include "cuts.hpp"
#include "mapped_network.hpp"
#include "mapper.hpp"
#include "retime.hpp"
#include "subject_graph.hpp"
#include "supergate.hpp"

namespace pbmap
{

struct flow_params
{
  cut_params cuts{};
  map_params map{};
  mapping_objective objective{ mapping_objective::dffs_depth_area };
  bool retime{ true };
  retime_params retiming{};

  /*! \brief Keep a pass only if it does not worsen balanced DFFs or depth. */
  bool guard_passes{ true };

  /*! \brief Use the classic minimum-depth mapper instead (reference). */
  bool depth_greedy{ false };
};

struct flow_result
{
  explicit flow_result( cell_library const& lib ) : balanced( lib ), final_network( lib ) {}

  /*! \brief Balanced network with splitters, before retiming. */
  mapped_network balanced;
  /*! \brief Final network (retimed unless disabled). */
  mapped_network final_network;
  double hit_rate{ 0.0 };
  map_stats mapping;
  cut_stats cuts;
  uint32_t passes_reverted{ 0 };
  /*! \brief Wall-clock seconds for mapping, balancing and retiming. */
  double runtime{ 0.0 };
};

namespace detail
{

/* balanced network for a cover, taking the cheaper of the planned and the
 * as-early-as-possible schedule */
inline mapped_network balance_cover( mapped_network const& cover )
{
  auto planned = insert_balancing( cover, { true } );
  auto asap = insert_balancing( cover, { false } );
  auto better = []( mapped_network const& a, mapped_network const& b ) {
    if ( a.num_dffs() != b.num_dffs() )
      return a.num_dffs() < b.num_dffs();
    return a.depth() < b.depth();
  };
  return better( asap, planned ) ? asap : planned;
}

inline bool no_worse( mapped_network const& a, mapped_network const& b )
{
  return a.num_dffs() <= b.num_dffs() && a.depth() <= b.depth();
}

} // namespace detail

/*! \brief Maps a subject graph and returns balanced and retimed networks. */
inline flow_result run_flow( subject_graph const& g, supergate_library const& sgl, flow_params const& ps = {} )
{
  auto const t0 = std::chrono::steady_clock::now();

  auto cps = ps.cuts;
  cps.stop_at_multi_fanout = ps.map.dag;
  auto cuts = enumerate_cuts( g, cps );
  compute_cut_functions( g, cuts );

  std::optional<mapped_network> balanced;
  flow_result res( *sgl.lib );
  res.cuts = cuts.stats;
  if ( cps.stop_at_multi_fanout )
  {
    /* hit rate is always reported over unrestricted cut enumeration */
    auto open_ps = ps.cuts;
    open_ps.stop_at_multi_fanout = false;
    auto all = enumerate_cuts( g, open_ps );
    compute_cut_functions( g, all );
    res.hit_rate = hit_rate( all, sgl );
  }
  else
    res.hit_rate = hit_rate( cuts, sgl );

  if ( ps.depth_greedy )
    balanced = detail::balance_cover( map_depth_greedy( g, cuts, sgl ) );
  else
  {
    auto sol = map_dag( g, cuts, sgl, ps.map );
    res.mapping = sol.stats;
    balanced = detail::balance_cover( extract_cover( sol ) );

    auto try_pass = [&]( auto&& pass ) {
      auto next = sol;
      pass( next );
      auto cand = detail::balance_cover( extract_cover( next ) );
      if ( !ps.guard_passes || detail::no_worse( cand, *balanced ) )
      {
        sol = std::move( next );
        balanced = std::move( cand );
      }
      else
        ++res.passes_reverted;
    };
    if ( ps.objective != mapping_objective::dffs )
      try_pass( []( mapping_solution& s ) { minimize_depth( s ); } );
    if ( ps.objective == mapping_objective::dffs_depth_area )
      try_pass( []( mapping_solution& s ) { optimize_area( s ); } );
  }

  res.balanced = insert_splitters( *balanced );
  res.final_network = ps.retime ? retime_min_registers( res.balanced, ps.retiming ) : res.balanced;
  res.runtime = std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count();
  return res;
}

} // namespace pbmap
