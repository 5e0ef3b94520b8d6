#include <catch_amalgamated.hpp>

#include <pbmap/balance.hpp>
#include <pbmap/flow.hpp>

#include "oracles.hpp"

using namespace pbmap;

namespace
{

supergate_library const& sgl()
{
  static auto const lib = generate_supergates( bundled_library() );
  return lib;
}

mapped_network cover_of( subject_graph const& g )
{
  cut_params cps;
  cps.stop_at_multi_fanout = true;
  auto cuts = enumerate_cuts( g, cps );
  compute_cut_functions( g, cuts );
  return extract_cover( map_dag( g, cuts, sgl() ) );
}

/* all heights relative to PIs: h(gate) = 1 + h(fanin), and fanins agree */
bool balanced_by_definition( mapped_network const& net )
{
  std::vector<int64_t> h( net.size(), -1 );
  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const& inst = net.instances[i];
    if ( inst.kind == instance_kind::pi || inst.kind == instance_kind::constant )
    {
      h[i] = 0;
      continue;
    }
    int64_t in = -1;
    for ( auto f : inst.fanins )
    {
      if ( net.instances[f].kind == instance_kind::constant )
        continue;
      if ( in >= 0 && h[f] != in )
        return false;
      in = h[f];
    }
    in = std::max<int64_t>( in, 0 );
    h[i] = inst.kind == instance_kind::splitter ? in : in + 1;
  }
  int64_t depth = -1;
  for ( auto const& po : net.pos )
  {
    if ( net.instances[po.driver].kind == instance_kind::constant )
      continue;
    if ( depth >= 0 && h[po.driver] != depth )
      return false;
    depth = h[po.driver];
  }
  return true;
}

} // namespace

TEST_CASE( "balancing equalizes fanin heights and output depth", "[balance]" )
{
  for ( uint64_t seed = 1; seed <= 20; ++seed )
  {
    auto const g = oracle::random_aig( 6, 50, 5, seed );
    auto const cover = cover_of( g );
    for ( bool sched : { true, false } )
    {
      auto const bal = insert_balancing( cover, { sched } );
      CHECK( check_balanced( bal ).empty() );
      CHECK( balanced_by_definition( bal ) );
      CHECK( path_lengths( bal ).size() <= 1u );
      CHECK( bal.num_gates() == cover.num_gates() );
      for ( auto const& p : oracle::input_patterns( g.num_pis(), 2u ) )
        CHECK( simulate( bal, p ) == oracle::simulate_subject( g, p ) );
    }
  }
}

TEST_CASE( "as-early-as-possible balancing of a hand example", "[balance]" )
{
  auto const& lib = bundled_library();
  auto const and2 = *lib.find( "and2" );
  mapped_network net( lib );
  auto const a = net.create_pi( "a" ), b = net.create_pi( "b" ), c = net.create_pi( "c" );
  auto const x = net.create_gate( and2, { a, b } );
  auto const y = net.create_gate( and2, { x, c } );
  net.create_po( y, "y" );
  net.create_po( a, "z" );
  auto const bal = insert_balancing( net, { false } );
  /* one DFF on c, two pads on z */
  CHECK( bal.num_dffs() == 3u );
  CHECK( bal.po_pad_dffs == 2u );
  CHECK( bal.depth() == 2u );
}

TEST_CASE( "splitters form binary trees with fanout minus one cells", "[balance]" )
{
  for ( uint64_t seed = 1; seed <= 20; ++seed )
  {
    auto const g = oracle::random_aig( 6, 60, 6, seed * 3u );
    auto const bal = detail::balance_cover( cover_of( g ) );
    auto const lf = logical_fanout_counts( bal );
    uint64_t expected = 0;
    for ( uint32_t i = 0; i < bal.size(); ++i )
      if ( bal.instances[i].kind != instance_kind::constant && lf[i] > 1u )
        expected += lf[i] - 1u;
    auto const net = insert_splitters( bal );
    CHECK( net.num_splitters() == expected );
    CHECK( check_splitters( net ).empty() );
    CHECK( check_balanced( net ).empty() );
    CHECK( net.depth() == bal.depth() );
    for ( auto const& p : oracle::input_patterns( g.num_pis(), 2u ) )
      CHECK( simulate( net, p ) == oracle::simulate_subject( g, p ) );
  }
}

TEST_CASE( "splitter trees put critical sinks near the root", "[balance]" )
{
  auto const& lib = bundled_library();
  auto const and2 = *lib.find( "and2" );
  mapped_network net( lib );
  auto const a = net.create_pi( "a" ), b = net.create_pi( "b" );
  /* a feeds a long chain and three outputs */
  auto x = net.create_gate( and2, { a, b } );
  for ( int i = 0; i < 4; ++i )
    x = net.create_gate( and2, { x, b } );
  net.create_po( x, "deep" );
  for ( int i = 0; i < 3; ++i )
    net.create_po( a, "o" + std::to_string( i ) );
  auto const res = insert_splitters( net );
  CHECK( res.num_splitters() == 3u + 4u );
  REQUIRE( !res.splitter_trees.empty() );
  for ( auto const& st : res.splitter_trees )
  {
    REQUIRE( st.sinks.size() == st.depth.size() );
    for ( size_t i = 0; i < st.sinks.size(); ++i )
      for ( size_t j = 0; j < st.sinks.size(); ++j )
        if ( st.criticality[i] > st.criticality[j] )
          CHECK( st.depth[i] <= st.depth[j] );
  }
}

TEST_CASE( "balancing rejects networks that already have DFFs", "[balance]" )
{
  auto const& lib = bundled_library();
  mapped_network net( lib );
  auto const a = net.create_pi( "a" );
  net.create_po( net.create_dff( a ), "y" );
  CHECK_THROWS_AS( insert_balancing( net ), internal_error );
}
