#include <catch_amalgamated.hpp>

#include <pbmap/library.hpp>
#include <pbmap/supergate.hpp>

#include "oracles.hpp"

using namespace pbmap;

namespace
{

std::string const small_lib = R"(# test library
GATE nand2 3.0 Y=!(a*b);  #JJ=9 #CLOCKED=1
PIN * INV 1 999 2.5 0 2.5 0
GATE inv   1.0 Y=!a;      #JJ=4 #CLOCKED=1
PIN a INV 1 999 1.5 0 1.5 0
GATE dff   2.0 Q=d;       #JJ=6
GATE spl   0.5 Y=a;       #JJ=3 #CLOCKED=0
GATE one   0.0 Y=CONST1;  #JJ=0
)";

} // namespace

TEST_CASE( "genlib parsing with annotations", "[library]" )
{
  auto const lib = parse_library( small_lib );
  REQUIRE( lib.size() == 4u );
  auto const nand = *lib.find( "nand2" );
  CHECK( lib[nand].function == 0x7u );
  CHECK( lib[nand].output == "Y" );
  CHECK( lib[nand].pins == std::vector<std::string>{ "a", "b" } );
  CHECK( lib[nand].jj_count == 9u );
  CHECK( lib[nand].area == 3.0 );
  CHECK( lib[nand].pin_delay == std::vector<double>{ 2.5, 2.5 } );
  CHECK( lib[lib.inverter].name == "inv" );
  CHECK( lib[lib.dff].name == "dff" );
  CHECK( lib[lib.dff].clocked );
  CHECK( lib[lib.splitter].name == "spl" );
  CHECK( !lib[lib.splitter].clocked );
  CHECK( lib.gates.size() == 2u );
}

TEST_CASE( "genlib expressions", "[library]" )
{
  auto fn = []( std::string const& expr ) {
    auto const lib = parse_library( "GATE g 1 O=" + expr + "; #JJ=1\nGATE i 1 O=!a; #JJ=1\nGATE a2 1 O=a*b; #JJ=1\nGATE d 1 O=a; #JJ=1\nGATE s 1 O=a; #JJ=1 #CLOCKED=0\n",
                                    { false } );
    return lib[*lib.find( "g" )].function;
  };
  CHECK( fn( "a+b" ) == 0xeu );
  CHECK( fn( "a^b" ) == 0x6u );
  CHECK( fn( "!(a+b)" ) == 0x1u );
  CHECK( fn( "a*!b" ) == 0x2u );
  CHECK( fn( "a' b" ) == 0x4u );
  CHECK( fn( "(a+b)*c" ) == 0xe0u );
}

TEST_CASE( "library errors", "[library]" )
{
  CHECK_THROWS_AS( parse_library( "GATE g 1 O=a*b;\nGATE i 1 O=!a; #JJ=1\n" ), library_error );
  CHECK_THROWS_AS( parse_library( "GATE g 1 O=a*b*c; #JJ=1\nGATE i 1 O=!a; #JJ=1\n" ), library_error );
  CHECK_THROWS_AS( parse_library( "GATE g 1 O=a*b #JJ=1\n" ), library_error );
  CHECK_THROWS_AS( parse_library( "LATCH l 1 Q=D; #JJ=1\n" ), library_error );
  CHECK_THROWS_AS( parse_library( "GATE g 1 O=a*b; #JJ=1\nGATE d 1 O=a; #JJ=1\nGATE s 1 O=a; #JJ=1 #CLOCKED=0\n" ), library_error );
  CHECK_THROWS_AS( parse_library( "GATE g 1 O=a^b; #JJ=1\nGATE i 1 O=!a; #JJ=1\nGATE d 1 O=a; #JJ=1\nGATE s 1 O=a; #JJ=1 #CLOCKED=0\n" ), library_error );
  CHECK_THROWS_AS( parse_library( "GATE g 1 O=a*b; #JJ=1\nGATE i 1 O=!a; #JJ=1\nGATE s 1 O=a; #JJ=1 #CLOCKED=0\n" ), library_error );
  CHECK_THROWS_AS( parse_library( "GATE g 1 O=(a*b; #JJ=1\n" ), library_error );
}

TEST_CASE( "bundled library contents", "[library]" )
{
  auto const& lib = bundled_library();
  auto jj = [&]( char const* n ) { return lib[*lib.find( n )].jj_count; };
  CHECK( jj( "and2" ) == 13u );
  CHECK( jj( "xor2" ) == 11u );
  CHECK( jj( "inv" ) == 10u );
  CHECK( lib[lib.inverter].clocked );
  CHECK( lib[lib.dff].clocked );
  CHECK( !lib[lib.splitter].clocked );
  auto const file = parse_library( read_text_file( std::string( PBMAP_SOURCE_DIR ) + "/benchmarks/lib/sfq.genlib" ) );
  REQUIRE( file.size() == lib.size() );
  for ( uint32_t i = 0; i < lib.size(); ++i )
  {
    CHECK( file[i].name == lib[i].name );
    CHECK( file[i].function == lib[i].function );
    CHECK( file[i].jj_count == lib[i].jj_count );
  }
}

TEST_CASE( "supergates implement their functions within the limits", "[library][supergate]" )
{
  auto const& lib = bundled_library();
  auto const sgl = generate_supergates( lib );
  REQUIRE( sgl.size() > 0u );
  CHECK( sgl.inverter_gate != UINT32_MAX );
  for ( auto const& sg : sgl.gates )
  {
    std::vector<truth_table> vars;
    for ( uint32_t i = 0; i < sg.num_vars; ++i )
      vars.push_back( tt_var( i, sg.num_vars ) );
    CHECK( ( evaluate_supergate( sg, lib, vars ) & tt_mask( sg.num_vars ) ) == sg.function );
    CHECK( sg.num_vars <= 5u );
    CHECK( sg.depth <= 3u );
    for ( uint32_t v = 0; v < sg.num_vars; ++v )
      CHECK( tt_depends_on( sg.function, v, sg.num_vars ) );
    double area = 0.0;
    uint32_t jj = 0;
    for ( auto const& g : sg.gates )
    {
      area += lib[g.cell].area;
      jj += lib[g.cell].jj_count;
    }
    CHECK( sg.area == Catch::Approx( area ) );
    CHECK( sg.jj_count == jj );
  }
  for ( auto const& [key, ids] : sgl.table )
    for ( auto id : ids )
      CHECK( sgl[id].function == key.function );
}

TEST_CASE( "supergate structures match an independent enumeration", "[library][supergate]" )
{
  auto const& lib = bundled_library();
  auto const sgl = generate_supergates( lib );
  oracle::tree_optimum const reference( lib );
  CHECK( sgl.size() == reference.num_structures() );
}

TEST_CASE( "boolean matching in both phases", "[library][supergate]" )
{
  auto const sgl = generate_supergates( bundled_library() );
  auto const f = tt_var( 0, 2 ) & tt_var( 1, 2 );
  auto const pos = boolean_match( sgl, f, 2, phase::positive );
  auto const neg = boolean_match( sgl, f, 2, phase::negative );
  REQUIRE( !pos.empty() );
  REQUIRE( !neg.empty() );
  for ( auto id : pos )
    CHECK( sgl[id].function == f );
  for ( auto id : neg )
    CHECK( sgl[id].function == tt_not( f, 2 ) );
  /* the single and2 comes first */
  CHECK( sgl[pos[0]].gates.size() == 1u );
}

TEST_CASE( "supergate limits are validated", "[library][supergate]" )
{
  supergate_params ps;
  ps.max_depth = 0u;
  CHECK_THROWS_AS( generate_supergates( bundled_library(), ps ), config_error );
  ps.max_depth = 2u;
  ps.max_vars = 7u;
  CHECK_THROWS_AS( generate_supergates( bundled_library(), ps ), config_error );
}

TEST_CASE( "hit rate counts matched non-trivial cuts", "[library][supergate]" )
{
  auto const sgl = generate_supergates( bundled_library() );
  subject_graph g;
  auto const a = g.create_pi(), b = g.create_pi(), c = g.create_pi();
  g.create_po( g.create_and( g.create_and( a, b ), c ) );
  auto cuts = enumerate_cuts( g );
  compute_cut_functions( g, cuts );
  CHECK( hit_rate( cuts, sgl ) == 1.0 );
}
