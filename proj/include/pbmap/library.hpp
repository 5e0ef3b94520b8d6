#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "truth_table.hpp"

namespace pbmap
{

enum class cell_kind : uint8_t
{
  logic,
  inverter,
  dff,
  splitter
};

inline char const* cell_kind_name( cell_kind k )
{
  switch ( k )
  {
  case cell_kind::logic:
    return "logic";
  case cell_kind::inverter:
    return "inverter";
  case cell_kind::dff:
    return "dff";
  case cell_kind::splitter:
    return "splitter";
  }
  return "?";
}

struct cell
{
  std::string name;
  std::string output{ "O" };
  std::vector<std::string> pins;
  /*! \brief Function over the pins, pin i is variable i. Unused for DFF and splitter. */
  truth_table function{ 0 };
  double area{ 0.0 };
  uint32_t jj_count{ 0 };
  std::vector<double> pin_delay;
  bool clocked{ true };
  cell_kind kind{ cell_kind::logic };

  uint32_t num_inputs() const { return static_cast<uint32_t>( pins.size() ); }
};

struct library_params
{
  /*! \brief Require DFF and splitter cells and restrict logic cells to two inputs. */
  bool sfq_mode{ true };
};

class cell_library
{
public:
  std::vector<cell> cells;

  std::optional<uint32_t> find( std::string_view name ) const
  {
    for ( uint32_t i = 0; i < cells.size(); ++i )
      if ( cells[i].name == name )
        return i;
    return std::nullopt;
  }

  cell const& operator[]( uint32_t i ) const { return cells[i]; }
  uint32_t size() const { return static_cast<uint32_t>( cells.size() ); }

  /* indices of the cheapest cell per special kind, or UINT32_MAX */
  uint32_t dff{ UINT32_MAX };
  uint32_t splitter{ UINT32_MAX };
  uint32_t inverter{ UINT32_MAX };

  /*! \brief Cells usable inside supergates (logic and inverter kinds). */
  std::vector<uint32_t> gates;
};

namespace detail
{

/* recursive-descent parser for genlib output expressions */
class genlib_expr_parser
{
public:
  genlib_expr_parser( std::string_view text, uint32_t line ) : s_( text ), line_( line ) {}

  /* returns the function; pins are collected in order of first appearance */
  truth_table parse( std::vector<std::string>& pins )
  {
    pins_ = &pins;
    auto const f = parse_or();
    skip_ws();
    if ( pos_ != s_.size() )
      fail( "unexpected character '" + std::string( 1, s_[pos_] ) + "' in expression" );
    return f;
  }

private:
  /* evaluate with at most 6 variables: every value is a 64-bit truth table
   * over all variables seen so far; the caller masks to the final count */
  truth_table parse_or()
  {
    auto f = parse_xor();
    while ( true )
    {
      skip_ws();
      if ( peek( '+' ) || peek( '|' ) )
      {
        ++pos_;
        f |= parse_xor();
      }
      else
        return f;
    }
  }

  truth_table parse_xor()
  {
    auto f = parse_and();
    while ( true )
    {
      skip_ws();
      if ( peek( '^' ) )
      {
        ++pos_;
        f ^= parse_and();
      }
      else
        return f;
    }
  }

  truth_table parse_and()
  {
    auto f = parse_unary();
    while ( true )
    {
      skip_ws();
      if ( peek( '*' ) || peek( '&' ) )
      {
        ++pos_;
        f &= parse_unary();
      }
      else if ( pos_ < s_.size() && ( std::isalnum( static_cast<unsigned char>( s_[pos_] ) ) || s_[pos_] == '_' || s_[pos_] == '(' || s_[pos_] == '!' ) )
      {
        /* juxtaposition means AND in genlib */
        f &= parse_unary();
      }
      else
        return f;
    }
  }

  truth_table parse_unary()
  {
    skip_ws();
    if ( peek( '!' ) )
    {
      ++pos_;
      return ~parse_unary();
    }
    auto f = parse_primary();
    while ( true )
    {
      skip_ws();
      if ( peek( '\'' ) )
      {
        ++pos_;
        f = ~f;
      }
      else
        return f;
    }
  }

  truth_table parse_primary()
  {
    skip_ws();
    if ( pos_ >= s_.size() )
      fail( "unexpected end of expression" );
    if ( peek( '(' ) )
    {
      ++pos_;
      auto const f = parse_or();
      skip_ws();
      if ( !peek( ')' ) )
        fail( "missing ')'" );
      ++pos_;
      return f;
    }
    auto const start = pos_;
    while ( pos_ < s_.size() && ( std::isalnum( static_cast<unsigned char>( s_[pos_] ) ) || s_[pos_] == '_' || s_[pos_] == '.' || s_[pos_] == '[' || s_[pos_] == ']' ) )
      ++pos_;
    if ( start == pos_ )
      fail( "expected identifier" );
    std::string const id( s_.substr( start, pos_ - start ) );
    if ( id == "CONST0" )
      return 0u;
    if ( id == "CONST1" )
      return ~truth_table( 0 );
    auto it = std::find( pins_->begin(), pins_->end(), id );
    if ( it == pins_->end() )
    {
      if ( pins_->size() >= max_tt_vars )
        fail( "too many inputs in expression" );
      pins_->push_back( id );
      it = pins_->end() - 1;
    }
    return tt_projections[static_cast<uint32_t>( it - pins_->begin() )];
  }

  bool peek( char c ) const { return pos_ < s_.size() && s_[pos_] == c; }

  void skip_ws()
  {
    while ( pos_ < s_.size() && std::isspace( static_cast<unsigned char>( s_[pos_] ) ) )
      ++pos_;
  }

  [[noreturn]] void fail( std::string const& msg ) const
  {
    throw library_error( "line " + std::to_string( line_ ) + ": " + msg );
  }

  std::string_view s_;
  uint32_t line_;
  size_t pos_{ 0 };
  std::vector<std::string>* pins_{ nullptr };
};

inline bool is_and_capable( truth_table f )
{
  switch ( f & 0xfu )
  {
  case 0x1:
  case 0x2:
  case 0x4:
  case 0x7:
  case 0x8:
  case 0xb:
  case 0xd:
  case 0xe:
    return true;
  default:
    return false;
  }
}

inline std::optional<std::string> annotation( std::string const& comment, std::string const& key )
{
  auto const pos = comment.find( key + "=" );
  if ( pos == std::string::npos )
    return std::nullopt;
  auto const start = pos + key.size() + 1u;
  auto end = start;
  while ( end < comment.size() && !std::isspace( static_cast<unsigned char>( comment[end] ) ) && comment[end] != '#' )
    ++end;
  return comment.substr( start, end - start );
}

} // namespace detail

/*! \brief Parses a genlib library with `#JJ=<n> #CLOCKED=<0|1>` annotations.
 *
 * A cell whose expression is a single variable is a DFF when clocked and a
 * splitter otherwise; `!a` is an inverter. `#KIND=` overrides the inference.
 */
inline cell_library parse_library( std::string const& text, library_params const& ps = {} )
{
  struct record
  {
    uint32_t line;
    std::string body;
    std::string comments;
  };
  std::vector<record> records;

  std::istringstream in( text );
  std::string raw;
  uint32_t line_no = 0;
  while ( std::getline( in, raw ) )
  {
    ++line_no;
    std::string code = raw, comment;
    if ( auto const hash = raw.find( '#' ); hash != std::string::npos )
    {
      code = raw.substr( 0, hash );
      comment = raw.substr( hash );
    }
    std::istringstream toks( code );
    std::string first;
    toks >> first;
    if ( first == "GATE" )
      records.push_back( { line_no, code, comment } );
    else if ( first == "PIN" || first.empty() )
    {
      if ( records.empty() )
      {
        if ( first.empty() )
          continue;
        throw library_error( "line " + std::to_string( line_no ) + ": PIN outside of GATE" );
      }
      records.back().body += "\n" + code;
      records.back().comments += " " + comment;
    }
    else if ( first == "LATCH" )
      throw library_error( "line " + std::to_string( line_no ) + ": LATCH records are not supported" );
    else
      throw library_error( "line " + std::to_string( line_no ) + ": unexpected token '" + first + "'" );
  }

  cell_library lib;
  for ( auto const& rec : records )
  {
    auto const where = "line " + std::to_string( rec.line ) + ": ";
    auto const semi = rec.body.find( ';' );
    if ( semi == std::string::npos )
      throw library_error( where + "missing ';' after gate expression" );

    std::istringstream head( rec.body.substr( 0, semi ) );
    std::string kw, name, area_str;
    head >> kw >> name >> area_str;
    std::string rest;
    std::getline( head, rest );
    auto const eq = rest.find( '=' );
    if ( name.empty() || area_str.empty() || eq == std::string::npos )
      throw library_error( where + "malformed GATE record" );

    cell c;
    c.name = name;
    try
    {
      c.area = std::stod( area_str );
    }
    catch ( std::exception const& )
    {
      throw library_error( where + "bad area '" + area_str + "'" );
    }
    c.output = rest.substr( 0, eq );
    c.output.erase( std::remove_if( c.output.begin(), c.output.end(), ::isspace ), c.output.end() );
    auto const expr = rest.substr( eq + 1u );
    c.function = detail::genlib_expr_parser( expr, rec.line ).parse( c.pins ) & tt_mask( static_cast<uint32_t>( c.pins.size() ) );

    /* pin delays: PIN <name|*> <phase> <in_load> <max_load> <rise_block> ... */
    c.pin_delay.assign( c.pins.size(), 0.0 );
    std::istringstream pins_in( rec.body.substr( semi + 1u ) );
    std::string pin_line;
    while ( std::getline( pins_in, pin_line ) )
    {
      std::istringstream pl( pin_line );
      std::string pkw, pname, phase, in_load, max_load, rise;
      pl >> pkw >> pname >> phase >> in_load >> max_load >> rise;
      if ( pkw != "PIN" )
        continue;
      double delay = 0.0;
      try
      {
        delay = rise.empty() ? 0.0 : std::stod( rise );
      }
      catch ( std::exception const& )
      {
        throw library_error( where + "bad pin delay '" + rise + "'" );
      }
      for ( uint32_t i = 0; i < c.pins.size(); ++i )
        if ( pname == "*" || pname == c.pins[i] )
          c.pin_delay[i] = delay;
    }

    if ( auto jj = detail::annotation( rec.comments, "#JJ" ) )
    {
      try
      {
        c.jj_count = static_cast<uint32_t>( std::stoul( *jj ) );
      }
      catch ( std::exception const& )
      {
        throw library_error( where + "bad JJ annotation '" + *jj + "'" );
      }
    }
    else if ( ps.sfq_mode )
      throw library_error( where + "cell '" + name + "' lacks a #JJ annotation" );

    if ( auto clk = detail::annotation( rec.comments, "#CLOCKED" ) )
    {
      if ( *clk != "0" && *clk != "1" )
        throw library_error( where + "CLOCKED must be 0 or 1" );
      c.clocked = *clk == "1";
    }

    if ( c.pins.empty() )
      continue; /* constant cells are never used for mapping */

    auto const n = c.num_inputs();
    if ( n == 1u && c.function == 0x2u )
      c.kind = c.clocked ? cell_kind::dff : cell_kind::splitter;
    else if ( n == 1u && c.function == 0x1u )
      c.kind = cell_kind::inverter;
    else
      c.kind = cell_kind::logic;

    if ( auto kind = detail::annotation( rec.comments, "#KIND" ) )
    {
      if ( *kind == "logic" )
        c.kind = cell_kind::logic;
      else if ( *kind == "inverter" )
        c.kind = cell_kind::inverter;
      else if ( *kind == "dff" )
        c.kind = cell_kind::dff;
      else if ( *kind == "splitter" )
        c.kind = cell_kind::splitter;
      else
        throw library_error( where + "unknown KIND '" + *kind + "'" );
    }

    if ( ps.sfq_mode && n > 2u )
      throw library_error( where + "cell '" + name + "' has " + std::to_string( n ) + " logic inputs; at most 2 are allowed" );
    if ( lib.find( name ) )
      throw library_error( where + "duplicate cell name '" + name + "'" );
    lib.cells.push_back( std::move( c ) );
  }

  auto pick = [&]( cell_kind kind ) {
    uint32_t best = UINT32_MAX;
    for ( uint32_t i = 0; i < lib.size(); ++i )
    {
      if ( lib[i].kind != kind )
        continue;
      if ( best == UINT32_MAX || std::make_pair( lib[i].jj_count, lib[i].area ) < std::make_pair( lib[best].jj_count, lib[best].area ) )
        best = i;
    }
    return best;
  };
  lib.dff = pick( cell_kind::dff );
  lib.splitter = pick( cell_kind::splitter );
  lib.inverter = pick( cell_kind::inverter );
  for ( uint32_t i = 0; i < lib.size(); ++i )
    if ( lib[i].kind == cell_kind::logic || lib[i].kind == cell_kind::inverter )
      lib.gates.push_back( i );

  if ( lib.inverter == UINT32_MAX )
    throw library_error( "library has no inverter" );
  bool and_capable = false;
  for ( auto const& c : lib.cells )
    and_capable |= c.kind == cell_kind::logic && c.num_inputs() == 2u && detail::is_and_capable( c.function );
  if ( !and_capable )
    throw library_error( "library has no AND-capable two-input cell" );
  if ( ps.sfq_mode && lib.dff == UINT32_MAX )
    throw library_error( "library has no DFF (clocked buffer) cell" );
  if ( ps.sfq_mode && lib.splitter == UINT32_MAX )
    throw library_error( "library has no splitter (unclocked buffer) cell" );
  return lib;
}

/* Bundled RSFQ library. Areas are in mm^2; JJ counts of and2, xor2 and inv
 * follow published CONNECT cells, the rest are calibrated against a 4-bit
 * Kogge-Stone adder. */
inline constexpr char const* bundled_library_text = R"(# pbmap bundled SFQ library
GATE and2  0.0045 O=a*b;   #JJ=13 #CLOCKED=1
PIN * NONINV 1 999 9.0 0 9.0 0
GATE or2   0.0040 O=a+b;   #JJ=12 #CLOCKED=1
PIN * NONINV 1 999 8.0 0 8.0 0
GATE xor2  0.0040 O=a^b;   #JJ=11 #CLOCKED=1
PIN * UNKNOWN 1 999 6.5 0 6.5 0
GATE inv   0.0035 O=!a;    #JJ=10 #CLOCKED=1
PIN * INV 1 999 9.5 0 9.5 0
GATE DFF   0.0030 O=a;     #JJ=12 #CLOCKED=1
PIN * NONINV 1 999 5.0 0 5.0 0
GATE SPLIT 0.0020 O=a;     #JJ=6 #CLOCKED=0
PIN * NONINV 1 999 4.0 0 4.0 0
)";

inline cell_library const& bundled_library()
{
  static cell_library const lib = parse_library( bundled_library_text );
  return lib;
}

} // namespace pbmap
