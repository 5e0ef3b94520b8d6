#include <catch_amalgamated.hpp>

#include <pbmap/flow.hpp>
#include <pbmap/retime.hpp>

#include "oracles.hpp"

using namespace pbmap;

namespace
{

supergate_library const& sgl()
{
  static auto const lib = generate_supergates( bundled_library() );
  return lib;
}

mapped_network balanced_of( subject_graph const& g )
{
  cut_params cps;
  cps.stop_at_multi_fanout = true;
  auto cuts = enumerate_cuts( g, cps );
  compute_cut_functions( g, cuts );
  return insert_splitters( detail::balance_cover( extract_cover( map_dag( g, cuts, sgl() ) ) ) );
}

/* PO words of a pipelined network at cycle k + depth equal the function of
 * the inputs of cycle k */
bool pipeline_equivalent( subject_graph const& g, mapped_network const& net )
{
  auto const patterns = oracle::input_patterns( g.num_pis(), 8u, 4u );
  auto stream = patterns;
  auto const depth = net.depth();
  for ( uint32_t i = 0; i < depth; ++i )
    stream.push_back( patterns.front() );
  auto const out = simulate_clocked( net, stream );
  for ( size_t k = 0; k < patterns.size(); ++k )
  {
    auto const want = oracle::simulate_subject( g, patterns[k] );
    for ( size_t o = 0; o < want.size(); ++o )
      if ( net.instances[net.pos[o].driver].kind != instance_kind::constant && out[k + depth][o] != want[o] )
        return false;
  }
  return true;
}

/* least DFFs inside a supergate with its root firing at the earliest time,
 * by enumerating every legal fire time of every gate */
uint32_t brute_force_match_dffs( supergate const& sg, std::vector<uint32_t> const& leaf )
{
  auto const n = sg.gates.size();
  std::vector<uint32_t> asap( n );
  for ( size_t i = 0; i < n; ++i )
  {
    uint32_t m = 0;
    for ( uint32_t j = 0; j < sg.gates[i].num_fanins; ++j )
    {
      auto const r = sg.gates[i].fanin[j];
      m = std::max( m, sg_is_var( r ) ? leaf[sg_var_of( r )] : asap[r] );
    }
    asap[i] = m + 1u;
  }
  std::vector<uint32_t> t( n );
  t[n - 1u] = asap[n - 1u];
  uint32_t best = UINT32_MAX;
  auto rec = [&]( auto&& self, size_t i ) -> void {
    if ( i == n - 1u )
    {
      uint32_t dffs = 0;
      for ( size_t k = 0; k < n; ++k )
        for ( uint32_t j = 0; j < sg.gates[k].num_fanins; ++j )
        {
          auto const r = sg.gates[k].fanin[j];
          auto const src = sg_is_var( r ) ? leaf[sg_var_of( r )] : t[r];
          if ( t[k] < src + 1u )
            return;
          dffs += t[k] - 1u - src;
        }
      best = std::min( best, dffs );
      return;
    }
    for ( uint32_t x = asap[i]; x < t[n - 1u]; ++x )
    {
      t[i] = x;
      self( self, i + 1u );
    }
  };
  rec( rec, 0u );
  return best;
}

} // namespace

TEST_CASE( "retiming never adds DFFs and keeps behaviour", "[retime]" )
{
  for ( uint64_t seed = 1; seed <= 25; ++seed )
  {
    auto const g = oracle::random_aig( 7, 70, 5, seed * 13u );
    auto const bal = balanced_of( g );
    retime_stats st;
    auto const rt = retime_min_registers( bal, {}, &st );
    CHECK( rt.num_dffs() <= bal.num_dffs() );
    CHECK( rt.depth() == bal.depth() );
    CHECK( rt.num_gates() == bal.num_gates() );
    CHECK( rt.num_splitters() == bal.num_splitters() );
    CHECK( check_balanced( rt ).empty() );
    CHECK( pipeline_equivalent( g, bal ) );
    CHECK( pipeline_equivalent( g, rt ) );
    for ( auto const& p : oracle::input_patterns( g.num_pis(), 4u ) )
      CHECK( simulate( rt, p ) == oracle::simulate_subject( g, p ) );
    /* a second round has nothing left to gain */
    CHECK( retime_min_registers( rt ).num_dffs() == rt.num_dffs() );
  }
}

TEST_CASE( "registers behind a splitter merge into one", "[retime]" )
{
  auto const& lib = bundled_library();
  auto const and2 = *lib.find( "and2" );
  mapped_network net( lib );
  auto const a = net.create_pi( "a" ), b = net.create_pi( "b" );
  auto const x = net.create_gate( and2, { a, b } );
  auto const s = net.create_splitter( x );
  net.create_po( net.create_dff( s ), "y0" );
  net.create_po( net.create_dff( s ), "y1" );
  REQUIRE( net.num_dffs() == 2u );

  auto const rt = retime_min_registers( net );
  CHECK( rt.num_dffs() == 1u );
  CHECK( rt.depth() == 2u );

  retime_params ps;
  ps.cross_splitters = false;
  CHECK( retime_min_registers( net, ps ).num_dffs() == 2u );
}

TEST_CASE( "registers are pulled back through a gate with equal inputs", "[retime]" )
{
  auto const& lib = bundled_library();
  auto const and2 = *lib.find( "and2" );
  mapped_network net( lib );
  auto const a = net.create_pi( "a" ), b = net.create_pi( "b" ), c = net.create_pi( "c" );
  /* g fires one cycle late with DFFs on both of its inputs */
  auto const x = net.create_gate( and2, { a, b } );
  auto const y = net.create_gate( and2, { net.create_dff( x ), net.create_dff( net.create_dff( c ) ) } );
  net.create_po( y, "y" );
  auto const rt = retime_min_registers( net );
  CHECK( net.num_dffs() == 3u );
  CHECK( rt.num_dffs() == 2u );
  CHECK( rt.depth() == net.depth() );
}

TEST_CASE( "match DFFs with registers pushed to the inputs", "[retime]" )
{
  auto const& s = sgl();
  std::mt19937_64 rng( 17 );
  uint32_t checked = 0;
  for ( auto const& sg : s.gates )
  {
    if ( rng() % 40u != 0u )
      continue;
    std::vector<uint32_t> leaf( sg.num_vars );
    for ( auto& h : leaf )
      h = static_cast<uint32_t>( rng() % 4u );
    auto const r = retimed_match_dffs( sg, leaf );
    CHECK( r == brute_force_match_dffs( sg, leaf ) );
    CHECK( r <= unretimed_match_dffs( sg, leaf ) );
    std::vector<uint32_t> zero( sg.num_vars, 0u );
    CHECK( retimed_match_dffs( sg, zero ) == sg.internal_dffs );
    ++checked;
  }
  CHECK( checked > 100u );
}
