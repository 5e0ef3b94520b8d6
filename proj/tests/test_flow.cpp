#include <catch_amalgamated.hpp>

#include <pbmap/flow.hpp>
#include <pbmap/netlist_io.hpp>

#include "oracles.hpp"

#include <filesystem>

using namespace pbmap;

namespace
{

supergate_library const& sgl()
{
  static auto const lib = generate_supergates( bundled_library() );
  return lib;
}

bool equivalent( subject_graph const& g, mapped_network const& net )
{
  for ( auto const& p : oracle::input_patterns( g.num_pis(), 21u, 4u ) )
    if ( simulate( net, p ) != oracle::simulate_subject( g, p ) )
      return false;
  return true;
}

} // namespace

TEST_CASE( "flow results are balanced and equivalent on random graphs", "[flow]" )
{
  for ( uint64_t seed = 1; seed <= 15; ++seed )
  {
    auto const g = oracle::random_aig( 8, 80, 6, seed * 101u );
    auto const fr = run_flow( g, sgl() );
    CHECK( check_balanced( fr.balanced ).empty() );
    CHECK( check_balanced( fr.final_network ).empty() );
    CHECK( check_splitters( fr.final_network ).empty() );
    CHECK( fr.final_network.num_dffs() <= fr.balanced.num_dffs() );
    CHECK( fr.final_network.depth() == fr.balanced.depth() );
    CHECK( equivalent( g, fr.balanced ) );
    CHECK( equivalent( g, fr.final_network ) );
  }
}

TEST_CASE( "guarded passes never make the balanced result worse", "[flow]" )
{
  for ( uint64_t seed = 1; seed <= 15; ++seed )
  {
    auto const g = oracle::random_aig( 7, 70, 5, seed * 7u );
    flow_params only;
    only.objective = mapping_objective::dffs;
    only.retime = false;
    auto const base = run_flow( g, sgl(), only );
    auto const full = run_flow( g, sgl() );
    CHECK( full.balanced.num_dffs() <= base.balanced.num_dffs() );
    CHECK( full.balanced.depth() <= base.balanced.depth() );
  }
}

TEST_CASE( "flow is deterministic", "[flow]" )
{
  auto const g = oracle::random_aig( 8, 120, 6, 4242 );
  auto const a = run_flow( g, sgl() );
  auto const b = run_flow( g, sgl() );
  CHECK( a.final_network.num_dffs() == b.final_network.num_dffs() );
  CHECK( a.final_network.num_gates() == b.final_network.num_gates() );
  CHECK( a.final_network.jj_count() == b.final_network.jj_count() );
  CHECK( a.hit_rate == b.hit_rate );
}

TEST_CASE( "flow options", "[flow]" )
{
  auto const g = read_netlist_file( std::string( PBMAP_SOURCE_DIR ) + "/benchmarks/ksa4.blif" );
  flow_params no_rt;
  no_rt.retime = false;
  auto const fr = run_flow( g, sgl(), no_rt );
  CHECK( fr.final_network.num_dffs() == fr.balanced.num_dffs() );

  flow_params greedy;
  greedy.depth_greedy = true;
  auto const gr = run_flow( g, sgl(), greedy );
  CHECK( equivalent( g, gr.final_network ) );
  CHECK( check_balanced( gr.final_network ).empty() );

  CHECK( fr.hit_rate > 0.0 );
  CHECK( fr.hit_rate <= 1.0 );
}

TEST_CASE( "every corpus circuit maps", "[flow][corpus]" )
{
  namespace fs = std::filesystem;
  size_t n = 0;
  for ( auto const& e : fs::directory_iterator( std::string( PBMAP_SOURCE_DIR ) + "/benchmarks" ) )
  {
    if ( e.path().extension() != ".blif" )
      continue;
    auto const g = read_netlist_file( e.path().string() );
    if ( g.num_pis() > 16u || g.num_gates() > 600u )
      continue;
    INFO( e.path().filename().string() );
    auto const fr = run_flow( g, sgl() );
    CHECK( check_balanced( fr.final_network ).empty() );
    CHECK( equivalent( g, fr.final_network ) );
    ++n;
  }
  CHECK( n >= 5u );
}
