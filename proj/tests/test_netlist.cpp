#include <catch_amalgamated.hpp>

#include <pbmap/library.hpp>
#include <pbmap/netlist_io.hpp>
#include <pbmap/subject_graph.hpp>

#include "oracles.hpp"

using namespace pbmap;

namespace
{

bool same_functions( subject_graph const& a, subject_graph const& b )
{
  if ( a.num_pis() != b.num_pis() || a.num_pos() != b.num_pos() )
    return false;
  for ( auto const& p : oracle::input_patterns( a.num_pis(), 5u ) )
    if ( oracle::simulate_subject( a, p ) != oracle::simulate_subject( b, p ) )
      return false;
  return true;
}

} // namespace

TEST_CASE( "structural hashing and trivial simplification", "[netlist]" )
{
  subject_graph g;
  auto const a = g.create_pi( "a" ), b = g.create_pi( "b" );
  auto const x = g.create_and( a, b );
  CHECK( g.create_and( b, a ) == x );
  CHECK( g.create_and( a, !a ) == g.get_constant( false ) );
  CHECK( g.create_and( a, a ) == a );
  CHECK( g.create_and( a, g.get_constant( true ) ) == a );
  CHECK( g.num_gates() == 1u );
}

TEST_CASE( "create_function realizes every 4-input function", "[netlist]" )
{
  std::mt19937_64 rng( 9 );
  for ( int it = 0; it < 200; ++it )
  {
    subject_graph g;
    std::vector<signal> in;
    for ( uint32_t i = 0; i < 4u; ++i )
      in.push_back( g.create_pi() );
    auto const f = rng() & tt_mask( 4 );
    g.create_po( g.create_function( f, in ) );
    CHECK( oracle::subject_functions( g )[0] == f );
  }
}

TEST_CASE( "BLIF parsing of covers", "[netlist]" )
{
  auto const g = parse_blif( R"(.model m
.inputs a b c
.outputs f g h
.names a b t
1- 1
-1 1
.names t c f
11 0
.names g
1
.names a h
0 1
.end
)" );
  REQUIRE( g.num_pis() == 3u );
  REQUIRE( g.num_pos() == 3u );
  auto const fs = oracle::subject_functions( g );
  auto const a = tt_var( 0, 3 ), b = tt_var( 1, 3 ), c = tt_var( 2, 3 );
  CHECK( fs[0] == ( ~( ( a | b ) & c ) & tt_mask( 3 ) ) );
  CHECK( fs[1] == tt_mask( 3 ) );
  CHECK( fs[2] == ( ~a & tt_mask( 3 ) ) );
}

TEST_CASE( "BLIF errors carry positions", "[netlist]" )
{
  auto expect_line = []( std::string const& text, uint32_t line ) {
    try
    {
      (void)parse_blif( text );
      FAIL( "no error for:\n" << text );
    }
    catch ( parse_error const& e )
    {
      CHECK( e.line() == line );
    }
  };
  expect_line( ".model m\n.inputs a\n.outputs f\n.names a f\n12 1\n.end\n", 5u );
  expect_line( ".model m\n.inputs a\n.outputs f\n.latch a f 0\n.end\n", 4u );
  expect_line( ".model m\n.inputs a\n.outputs f\n.names a f\n1 1\n.names a f\n1 1\n.end\n", 6u );
  expect_line( ".model m\n.inputs a\n.outputs f\n.gate and2 A=a B=a O=f\n.end\n", 4u );
  CHECK_THROWS_AS( parse_blif( ".model m\n.inputs a\n.outputs f\n.names g f\n1 1\n.end\n" ), parse_error );
  CHECK_THROWS_AS( parse_blif( ".model m\n.inputs a\n.outputs f\n.names g f\n1 1\n.names f g\n1 1\n.end\n" ), parse_error );
}

TEST_CASE( "BLIF with library gates", "[netlist]" )
{
  auto const& lib = bundled_library();
  auto const g = parse_blif( ".model m\n.inputs a b\n.outputs f\n.gate xor2 a=a b=b O=t\n.gate inv a=t O=f\n.end\n", &lib );
  CHECK( oracle::subject_functions( g )[0] == 0x9u );
}

TEST_CASE( "AIGER parsing", "[netlist]" )
{
  auto const g = parse_aiger( "aag 3 2 0 1 1\n2\n4\n7\n6 2 5\ni0 x\ni1 y\no0 z\n" );
  REQUIRE( g.num_pis() == 2u );
  CHECK( g.pi_name( 0 ) == "x" );
  CHECK( g.pos()[0].name == "z" );
  CHECK( oracle::subject_functions( g )[0] == ( ~( tt_var( 0, 2 ) & ~tt_var( 1, 2 ) ) & tt_mask( 2 ) ) );
  CHECK_THROWS_AS( parse_aiger( "aag 1 0 1 0 0\n2 3\n" ), parse_error );
  CHECK_THROWS_AS( parse_aiger( "aig 0 0 0 0 0\n" ), parse_error );
}

TEST_CASE( "BLIF write and read round trip", "[netlist]" )
{
  for ( uint64_t seed = 1; seed <= 20; ++seed )
  {
    auto const g = oracle::random_aig( 6, 40, 4, seed );
    auto const h = parse_blif( write_blif( g ) );
    CHECK( same_functions( g, h ) );
    CHECK( structural_hash( sweep( g ) ) == structural_hash( sweep( h ) ) );
  }
}

TEST_CASE( "sweep keeps functions and drops dangling logic", "[netlist]" )
{
  subject_graph g;
  auto const a = g.create_pi(), b = g.create_pi(), c = g.create_pi();
  g.create_and( a, c );
  g.create_po( g.create_and( a, !b ) );
  auto const s = sweep( g );
  CHECK( s.num_gates() == 1u );
  CHECK( s.num_pis() == 3u );
  CHECK( same_functions( g, s ) );
}

TEST_CASE( "structural hash ignores fanin order and numbering", "[netlist]" )
{
  subject_graph g1, g2;
  auto const a1 = g1.create_pi(), b1 = g1.create_pi(), c1 = g1.create_pi();
  g1.create_po( g1.create_and( g1.create_and( a1, !b1 ), c1 ) );
  auto const a2 = g2.create_pi(), b2 = g2.create_pi(), c2 = g2.create_pi();
  auto const unused = g2.create_and( b2, c2 );
  (void)unused;
  g2.create_po( g2.create_and( c2, g2.create_and( !b2, a2 ) ) );
  CHECK( structural_hash( g1 ) == structural_hash( sweep( g2 ) ) );
  subject_graph g3;
  auto const a3 = g3.create_pi(), b3 = g3.create_pi(), c3 = g3.create_pi();
  g3.create_po( g3.create_and( g3.create_and( a3, b3 ), c3 ) );
  CHECK( structural_hash( g1 ) != structural_hash( g3 ) );
}

TEST_CASE( "Verilog writer emits a module per graph", "[netlist]" )
{
  auto const g = oracle::random_aig( 3, 5, 2, 4 );
  auto const v = write_verilog( g );
  CHECK( v.find( "module " ) != std::string::npos );
  CHECK( v.find( "endmodule" ) != std::string::npos );
  CHECK( v.find( "input x0;" ) != std::string::npos );
}

TEST_CASE( "every corpus circuit parses", "[netlist]" )
{
  for ( auto const& name : { "c17", "ksa4", "fig4", "ctl160", "mult4" } )
  {
    auto const g = read_netlist_file( std::string( PBMAP_SOURCE_DIR ) + "/benchmarks/" + name + ".blif", &bundled_library() );
    CHECK( g.num_pos() > 0u );
    CHECK( g.name == name );
  }
  CHECK_THROWS_AS( read_netlist_file( "/nonexistent/file.blif" ), error );
}
