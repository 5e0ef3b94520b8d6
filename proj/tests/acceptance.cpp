/* Acceptance checks. Usage: pbmap_acceptance [criterion...]; with no argument
 * every criterion runs. Prints one PASS/FAIL line per criterion and exits
 * non-zero if any of them fails. */

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <pbmap/pbmap.hpp>

#include "oracles.hpp"

using namespace pbmap;

namespace
{

struct verdict
{
  bool pass{ false };
  std::string detail;
};

double seconds_since( std::chrono::steady_clock::time_point t0 )
{
  return std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count();
}

std::string fmt( double v, int digits = 2 )
{
  char buf[64];
  std::snprintf( buf, sizeof( buf ), "%.*f", digits, v );
  return buf;
}

supergate_library const& supergates()
{
  static auto const sgl = generate_supergates( bundled_library() );
  return sgl;
}

std::vector<std::filesystem::path> corpus()
{
  std::vector<std::filesystem::path> files;
  for ( auto const& e : std::filesystem::directory_iterator( std::filesystem::path( PBMAP_SOURCE_DIR ) / "benchmarks" ) )
    if ( e.path().extension() == ".blif" )
      files.push_back( e.path() );
  std::sort( files.begin(), files.end() );
  return files;
}

subject_graph load( std::filesystem::path const& p )
{
  return read_netlist_file( p.string(), &bundled_library() );
}

/* 1: DP optimum on trees equals the exhaustive-composition optimum */
verdict tree_optimality()
{
  auto const t0 = std::chrono::steady_clock::now();
  oracle::tree_optimum const reference( bundled_library() );
  auto const& sgl = supergates();
  std::mt19937_64 rng( 2024 );
  uint64_t checked = 0, mismatches = 0, capped = 0;
  std::string first;
  auto check = [&]( binary_tree const& t ) {
    auto const g = oracle::tree_subject_graph( t, rng, rng() & 1u );
    auto cuts = enumerate_cuts( g );
    compute_cut_functions( g, cuts );
    auto const sol = map_tree( g, cuts, sgl );
    capped += sol.stats.capped_nodes;
    auto const got = root_opt( sol );
    auto const want = reference.opt( g );
    ++checked;
    if ( got != want && mismatches++ == 0u )
      first = "first mismatch on a " + std::to_string( t.num_nodes() ) + "-node tree: DP " + std::to_string( got ) + ", exhaustive " + std::to_string( want );
  };
  uint64_t exhaustive = 0;
  for ( uint32_t n = 1; n <= 12u; ++n )
    for ( auto const& t : all_trees( n ) )
    {
      check( t );
      ++exhaustive;
    }
  for ( uint32_t i = 0; i < 500u; ++i )
    check( random_tree( std::uniform_int_distribution<uint32_t>( 1u, 20u )( rng ), rng ) );
  auto const secs = seconds_since( t0 );
  verdict v;
  v.pass = mismatches == 0u && secs < 300.0;
  v.detail = std::to_string( exhaustive ) + " exhaustive + 500 random trees, " + std::to_string( mismatches ) + " mismatches, " +
             std::to_string( capped ) + " capped nodes, " + fmt( secs, 1 ) + " s" + ( first.empty() ? "" : "; " + first );
  return v;
}

/* node-per-node cover of a subject graph: one and2 per AND node, an inverter
 * per complemented edge */
mapped_network chain_cover( subject_graph const& g )
{
  auto const& lib = bundled_library();
  auto const and2 = *lib.find( "and2" );
  mapped_network net( lib );
  std::vector<uint32_t> id( g.size() ), inv( g.size(), UINT32_MAX );
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    id[g.pis()[i]] = net.create_pi( g.pi_name( i ) );
  auto lit = [&]( signal s ) {
    if ( !s.complemented() )
      return id[s.node()];
    if ( inv[s.node()] == UINT32_MAX )
      inv[s.node()] = net.create_gate( lib.inverter, { id[s.node()] } );
    return inv[s.node()];
  };
  g.foreach_gate( [&]( node_id n ) { id[n] = net.create_gate( and2, { lit( g.fanin0( n ) ), lit( g.fanin1( n ) ) } ); } );
  for ( auto const& po : g.pos() )
    net.create_po( lit( po.driver ), po.name );
  return net;
}

/* 2: F = a b !c d needs 1 balancing DFF, the forced chain cover 3 */
verdict fig4()
{
  auto const g = load( std::filesystem::path( PBMAP_SOURCE_DIR ) / "benchmarks" / "fig4.blif" );
  flow_params ps;
  ps.retime = false;
  auto const mapped = run_flow( g, supergates(), ps );
  auto const chain = insert_balancing( chain_cover( g ), { false } );
  verdict v;
  v.pass = mapped.balanced.num_dffs() == 1u && chain.num_dffs() == 3u;
  v.detail = "mapped cover " + std::to_string( mapped.balanced.num_dffs() ) + " DFFs (want 1), chain cover " + std::to_string( chain.num_dffs() ) +
             " DFFs (want 3)";
  return v;
}

/* 3: KSA4 depth, DFF counts, JJ total and runtime */
verdict ksa4()
{
  auto const t0 = std::chrono::steady_clock::now();
  auto const g = load( std::filesystem::path( PBMAP_SOURCE_DIR ) / "benchmarks" / "ksa4.blif" );
  auto const r = run_flow( g, supergates() );
  auto const secs = seconds_since( t0 );
  auto const depth = r.final_network.depth();
  auto const before = r.balanced.num_dffs(), after = r.final_network.num_dffs();
  auto const jj = static_cast<double>( r.final_network.jj_count() );
  verdict v;
  v.pass = depth == 6u && before <= 30u && after <= 25u && jj >= 0.9 * 692.0 && jj <= 1.1 * 692.0 && r.runtime < 1.0;
  v.detail = "depth " + std::to_string( depth ) + " (want 6), DFFs " + std::to_string( before ) + " -> " + std::to_string( after ) +
             " (want <= 30 -> <= 25), JJ " + fmt( jj, 0 ) + " (want 692 +-10%), flow " + fmt( r.runtime, 3 ) + " s, with load " + fmt( secs, 3 ) + " s";
  return v;
}

/* 4: tree formula suite */
verdict formulas()
{
  auto const checks = run_lemma_suite( 1u, 1000u );
  verdict v;
  v.pass = true;
  std::string failed;
  for ( auto const& c : checks )
  {
    if ( c.passed )
      continue;
    v.pass = false;
    failed += ( failed.empty() ? "" : "; " ) + c.name + " " + std::to_string( c.failures ) + "/" + std::to_string( c.cases ) + " fail, first: " + c.first_failure;
  }
  v.detail = std::to_string( checks.size() ) + " checks" + ( failed.empty() ? ", all exact" : ": " + failed );
  return v;
}

/* sinks per instance with splitters looked through, computed from the raw
 * fanin lists */
std::vector<uint32_t> sinks_through_splitters( mapped_network const& net )
{
  std::vector<std::vector<uint32_t>> readers( net.size() );
  std::vector<uint32_t> po_reads( net.size(), 0u );
  for ( uint32_t i = 0; i < net.size(); ++i )
    for ( auto f : net.instances[i].fanins )
      readers[f].push_back( i );
  for ( auto const& po : net.pos )
    ++po_reads[po.driver];
  std::vector<uint32_t> cnt( net.size(), 0u );
  for ( uint32_t i = net.size(); i-- > 0; )
  {
    cnt[i] = po_reads[i];
    for ( auto r : readers[i] )
      cnt[i] += net.instances[r].kind == instance_kind::splitter ? cnt[r] : 1u;
  }
  return cnt;
}

bool clocked_equivalent( subject_graph const& g, mapped_network const& net, std::vector<std::vector<uint64_t>> const& patterns )
{
  auto const depth = net.depth();
  std::vector<std::vector<uint64_t>> stream( patterns );
  for ( uint32_t i = 0; i < depth; ++i )
    stream.push_back( patterns.front() );
  auto const out = simulate_clocked( net, stream );
  for ( size_t k = 0; k < patterns.size(); ++k )
  {
    auto const want = oracle::simulate_subject( g, patterns[k] );
    for ( size_t o = 0; o < want.size(); ++o )
    {
      auto const& inst = net.instances[net.pos[o].driver];
      if ( inst.kind == instance_kind::constant )
        continue;
      if ( out[k + depth][o] != want[o] )
        return false;
    }
  }
  return true;
}

/* 5: structural invariants over the corpus */
verdict structural_invariants()
{
  verdict v;
  v.pass = true;
  uint32_t circuits = 0, exhaustive = 0;
  auto fail = [&]( std::string const& what ) {
    if ( v.pass )
      v.detail = what;
    v.pass = false;
  };
  for ( auto const& path : corpus() )
  {
    auto const name = path.stem().string();
    auto const g = load( path );
    auto const r = run_flow( g, supergates() );
    ++circuits;
    for ( auto const* net : { &r.balanced, &r.final_network } )
    {
      auto const which = name + ( net == &r.balanced ? " (balanced)" : " (retimed)" );
      if ( auto const msg = check_balanced( *net ); !msg.empty() )
        fail( which + ": " + msg );
      auto const lengths = path_lengths( *net );
      if ( lengths.size() > 1u )
        fail( which + ": " + std::to_string( lengths.size() ) + " distinct PI-to-PO lengths" );
      auto const cnt = sinks_through_splitters( *net );
      uint64_t expected = 0;
      for ( uint32_t i = 0; i < net->size(); ++i )
        if ( net->instances[i].kind != instance_kind::splitter && net->instances[i].kind != instance_kind::constant && cnt[i] > 1u )
          expected += cnt[i] - 1u;
      if ( expected != net->num_splitters() )
        fail( which + ": " + std::to_string( net->num_splitters() ) + " splitters, fanout sum gives " + std::to_string( expected ) );
    }
    if ( r.final_network.num_dffs() > r.balanced.num_dffs() )
      fail( name + ": retiming increased DFFs" );
    auto const patterns = oracle::input_patterns( g.num_pis(), 11u );
    if ( g.num_pis() <= 10u )
      ++exhaustive;
    for ( auto const& p : patterns )
      if ( simulate( r.final_network, p ) != oracle::simulate_subject( g, p ) )
      {
        fail( name + ": retimed network differs functionally" );
        break;
      }
    if ( !clocked_equivalent( g, r.final_network, patterns ) )
      fail( name + ": clocked simulation of the retimed network differs" );
  }
  if ( v.pass )
    v.detail = std::to_string( circuits ) + " circuits, " + std::to_string( exhaustive ) + " checked exhaustively";
  return v;
}

/* 6: DFFs against the minimum-depth reference mapper */
verdict reference_comparison()
{
  auto const t0 = std::chrono::steady_clock::now();
  verdict v;
  v.pass = true;
  uint32_t circuits = 0, strict = 0;
  std::string worse;
  for ( auto const& path : corpus() )
  {
    auto const g = load( path );
    auto const ours = run_flow( g, supergates() );
    flow_params ps;
    ps.depth_greedy = true;
    auto const ref = run_flow( g, supergates(), ps );
    ++circuits;
    auto const a = ours.final_network.num_dffs(), b = ref.final_network.num_dffs();
    if ( a > b )
    {
      v.pass = false;
      worse += " " + path.stem().string() + "(" + std::to_string( a ) + ">" + std::to_string( b ) + ")";
    }
    strict += a < b;
  }
  auto const secs = seconds_since( t0 );
  v.pass = v.pass && 10u * strict >= 3u * circuits && secs < 600.0;
  v.detail = std::to_string( strict ) + "/" + std::to_string( circuits ) + " circuits strictly fewer DFFs, " + fmt( secs, 1 ) + " s" +
             ( worse.empty() ? "" : "; worse on" + worse );
  return v;
}

/* 7: hit rate with k = 5 and depth-3 supergates */
verdict hit_rate_range()
{
  verdict v;
  v.pass = true;
  double lo = 1.0, hi = 0.0;
  std::string outside;
  for ( auto const& path : corpus() )
  {
    auto const g = load( path );
    auto cuts = enumerate_cuts( g );
    compute_cut_functions( g, cuts );
    auto const h = hit_rate( cuts, supergates() );
    lo = std::min( lo, h );
    hi = std::max( hi, h );
    if ( h < 0.04 || h > 0.35 )
    {
      v.pass = false;
      outside += " " + path.stem().string() + "=" + fmt( h, 3 );
    }
  }
  v.detail = "range [" + fmt( lo, 3 ) + ", " + fmt( hi, 3 ) + "] (want within [0.04, 0.35])" + ( outside.empty() ? "" : "; outside:" + outside );
  return v;
}

} // namespace

int main( int argc, char** argv )
{
  std::vector<std::pair<std::string, std::function<verdict()>>> const criteria = {
      { "tree_optimality", tree_optimality },
      { "fig4", fig4 },
      { "ksa4", ksa4 },
      { "formulas", formulas },
      { "structural_invariants", structural_invariants },
      { "reference_comparison", reference_comparison },
      { "hit_rate", hit_rate_range } };

  std::vector<std::string> wanted( argv + 1, argv + argc );
  if ( wanted.empty() )
    for ( auto const& [name, fn] : criteria )
      wanted.push_back( name );

  int failures = 0;
  for ( auto const& w : wanted )
  {
    auto it = std::find_if( criteria.begin(), criteria.end(), [&]( auto const& c ) { return c.first == w; } );
    if ( it == criteria.end() )
    {
      std::cerr << "unknown criterion '" << w << "'\n";
      return 2;
    }
    verdict v;
    try
    {
      v = it->second();
    }
    catch ( std::exception const& e )
    {
      v = { false, std::string( "exception: " ) + e.what() };
    }
    std::cout << ( v.pass ? "PASS " : "FAIL " ) << w << ": " << v.detail << std::endl;
    failures += !v.pass;
  }
  return failures ? 1 : 0;
}
