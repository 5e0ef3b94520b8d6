#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "errors.hpp"
#include "library.hpp"
#include "subject_graph.hpp"

namespace pbmap
{

enum class netlist_format
{
  blif,
  aiger_ascii,
  verilog
};

namespace detail
{

struct blif_token
{
  std::string text;
  uint32_t column;
};

struct blif_line
{
  uint32_t line;
  std::vector<blif_token> tokens;
};

inline std::vector<blif_line> blif_lines( std::string const& text )
{
  std::vector<blif_line> lines;
  std::istringstream in( text );
  std::string raw;
  uint32_t line_no = 0;
  bool continued = false;
  while ( std::getline( in, raw ) )
  {
    ++line_no;
    if ( !raw.empty() && raw.back() == '\r' )
      raw.pop_back();
    if ( auto const hash = raw.find( '#' ); hash != std::string::npos )
      raw.erase( hash );
    bool cont = false;
    if ( !raw.empty() && raw.back() == '\\' )
    {
      cont = true;
      raw.pop_back();
    }
    std::vector<blif_token> toks;
    for ( size_t i = 0; i < raw.size(); )
    {
      if ( std::isspace( static_cast<unsigned char>( raw[i] ) ) )
      {
        ++i;
        continue;
      }
      auto const start = i;
      while ( i < raw.size() && !std::isspace( static_cast<unsigned char>( raw[i] ) ) )
        ++i;
      toks.push_back( { raw.substr( start, i - start ), static_cast<uint32_t>( start + 1u ) } );
    }
    if ( continued && !lines.empty() )
      lines.back().tokens.insert( lines.back().tokens.end(), toks.begin(), toks.end() );
    else if ( !toks.empty() || cont )
      lines.push_back( { line_no, std::move( toks ) } );
    continued = cont;
  }
  std::erase_if( lines, []( auto const& l ) { return l.tokens.empty(); } );
  return lines;
}

struct signal_definition
{
  uint32_t line{ 0 };
  uint32_t column{ 0 };
  std::vector<std::string> inputs;
  std::vector<std::pair<uint32_t, uint32_t>> input_pos; /* (line, column) of each reference */
  /* .names cover */
  std::vector<std::string> cubes;
  char out_value{ '1' };
  /* .gate */
  bool is_gate{ false };
  truth_table function{ 0 };
};

/* builds signals for definitions reachable from the requested names */
class netlist_resolver
{
public:
  netlist_resolver( subject_graph& g, std::unordered_map<std::string, signal_definition> const& defs,
                    std::unordered_map<std::string, signal> const& pis )
      : g_( g ), defs_( defs ), values_( pis ) {}

  signal resolve( std::string const& name, uint32_t line, uint32_t column )
  {
    if ( auto it = values_.find( name ); it != values_.end() )
      return it->second;

    struct frame
    {
      std::string name;
      signal_definition const* def;
      size_t next;
    };
    std::vector<frame> stack;
    auto push = [&]( std::string const& n, uint32_t l, uint32_t c ) {
      auto it = defs_.find( n );
      if ( it == defs_.end() )
        throw parse_error( l, c, "undefined signal '" + n + "'" );
      if ( visiting_.count( n ) )
        throw parse_error( l, c, "cyclic definition through signal '" + n + "'" );
      visiting_.insert( n );
      stack.push_back( { n, &it->second, 0u } );
    };
    push( name, line, column );
    while ( !stack.empty() )
    {
      auto& top = stack.back();
      if ( top.next < top.def->inputs.size() )
      {
        auto const& in = top.def->inputs[top.next];
        auto const [l, c] = top.def->input_pos[top.next];
        ++top.next;
        if ( !values_.count( in ) )
          push( in, l, c );
        continue;
      }
      std::vector<signal> ins;
      for ( auto const& in : top.def->inputs )
        ins.push_back( values_.at( in ) );
      values_[top.name] = build( *top.def, ins );
      visiting_.erase( top.name );
      stack.pop_back();
    }
    return values_.at( name );
  }

private:
  signal build( signal_definition const& def, std::vector<signal> const& ins )
  {
    if ( def.is_gate )
      return g_.create_function( def.function, ins );

    std::vector<signal> terms;
    for ( auto const& cube : def.cubes )
    {
      std::vector<signal> lits;
      for ( size_t i = 0; i < cube.size(); ++i )
      {
        if ( cube[i] == '1' )
          lits.push_back( ins[i] );
        else if ( cube[i] == '0' )
          lits.push_back( !ins[i] );
      }
      terms.push_back( g_.create_nary_and( lits ) );
    }
    auto const f = terms.empty() ? g_.get_constant( false ) : g_.create_nary_or( terms );
    return def.out_value == '1' || def.cubes.empty() ? f : !f;
  }

  subject_graph& g_;
  std::unordered_map<std::string, signal_definition> const& defs_;
  std::unordered_map<std::string, signal> values_;
  std::unordered_set<std::string> visiting_;
};

} // namespace detail

/*! \brief Reads the combinational BLIF subset (.model .inputs .outputs .names
 * .gate .end). `.gate` records need a library for the cell functions; DFF and
 * splitter cells read back as wires. */
inline subject_graph parse_blif( std::string const& text, cell_library const* lib = nullptr )
{
  using detail::signal_definition;
  auto const lines = detail::blif_lines( text );

  subject_graph g;
  std::vector<std::pair<std::string, std::pair<uint32_t, uint32_t>>> inputs, outputs;
  std::unordered_map<std::string, signal_definition> defs;
  bool seen_model = false, ended = false;
  signal_definition* current = nullptr;

  auto define = [&]( std::string const& name, uint32_t line, uint32_t col ) -> signal_definition& {
    if ( defs.count( name ) )
      throw parse_error( line, col, "signal '" + name + "' has multiple drivers" );
    for ( auto const& in : inputs )
      if ( in.first == name )
        throw parse_error( line, col, "primary input '" + name + "' is redefined" );
    auto& d = defs[name];
    d.line = line;
    d.column = col;
    return d;
  };

  for ( auto const& l : lines )
  {
    auto const& t = l.tokens;
    auto const& cmd = t[0].text;
    if ( ended )
      throw parse_error( l.line, t[0].column, "content after .end" );
    if ( cmd[0] != '.' )
    {
      if ( !current )
        throw parse_error( l.line, t[0].column, "cube line outside of .names" );
      auto const n = current->inputs.size();
      if ( n == 0 )
      {
        if ( t.size() != 1u || ( t[0].text != "0" && t[0].text != "1" ) )
          throw parse_error( l.line, t[0].column, "expected '0' or '1' for constant cover" );
        if ( !current->cubes.empty() && current->out_value != t[0].text[0] )
          throw parse_error( l.line, t[0].column, "mixed on-set and off-set rows" );
        current->out_value = t[0].text[0];
        current->cubes.push_back( "" );
        continue;
      }
      if ( t.size() != 2u )
        throw parse_error( l.line, t[0].column, "expected '<cube> <value>'" );
      if ( t[0].text.size() != n )
        throw parse_error( l.line, t[0].column, "cube width " + std::to_string( t[0].text.size() ) + " does not match " + std::to_string( n ) + " inputs" );
      for ( size_t i = 0; i < n; ++i )
        if ( t[0].text[i] != '0' && t[0].text[i] != '1' && t[0].text[i] != '-' )
          throw parse_error( l.line, static_cast<uint32_t>( t[0].column + i ), "invalid cube character '" + std::string( 1, t[0].text[i] ) + "'" );
      if ( t[1].text != "0" && t[1].text != "1" )
        throw parse_error( l.line, t[1].column, "output value must be 0 or 1" );
      if ( !current->cubes.empty() && current->out_value != t[1].text[0] )
        throw parse_error( l.line, t[1].column, "mixed on-set and off-set rows" );
      current->out_value = t[1].text[0];
      current->cubes.push_back( t[0].text );
      continue;
    }

    current = nullptr;
    if ( cmd == ".model" )
    {
      if ( seen_model )
        throw parse_error( l.line, t[0].column, "multiple models are not supported" );
      seen_model = true;
      if ( t.size() > 1u )
        g.name = t[1].text;
    }
    else if ( cmd == ".inputs" )
    {
      for ( size_t i = 1; i < t.size(); ++i )
      {
        if ( defs.count( t[i].text ) )
          throw parse_error( l.line, t[i].column, "primary input '" + t[i].text + "' is redefined" );
        inputs.push_back( { t[i].text, { l.line, t[i].column } } );
      }
    }
    else if ( cmd == ".outputs" )
    {
      for ( size_t i = 1; i < t.size(); ++i )
        outputs.push_back( { t[i].text, { l.line, t[i].column } } );
    }
    else if ( cmd == ".names" )
    {
      if ( t.size() < 2u )
        throw parse_error( l.line, t[0].column, ".names needs an output signal" );
      auto& d = define( t.back().text, l.line, t.back().column );
      for ( size_t i = 1; i + 1 < t.size(); ++i )
      {
        d.inputs.push_back( t[i].text );
        d.input_pos.push_back( { l.line, t[i].column } );
      }
      if ( d.inputs.size() > 16u )
        throw parse_error( l.line, t[0].column, ".names with more than 16 inputs is not supported" );
      current = &d;
    }
    else if ( cmd == ".gate" || cmd == ".mlatch" || cmd == ".subckt" )
    {
      if ( cmd != ".gate" )
        throw parse_error( l.line, t[0].column, "unsupported construct " + cmd );
      if ( !lib )
        throw parse_error( l.line, t[0].column, ".gate requires a cell library" );
      if ( t.size() < 2u )
        throw parse_error( l.line, t[0].column, ".gate needs a cell name" );
      auto const ci = lib->find( t[1].text );
      if ( !ci )
        throw parse_error( l.line, t[1].column, "unknown cell '" + t[1].text + "'" );
      auto const& c = ( *lib )[*ci];
      std::vector<std::string> actual( c.num_inputs() );
      std::vector<std::pair<uint32_t, uint32_t>> pos( c.num_inputs() );
      std::string out;
      uint32_t out_col = 0;
      for ( size_t i = 2; i < t.size(); ++i )
      {
        auto const eq = t[i].text.find( '=' );
        if ( eq == std::string::npos )
          throw parse_error( l.line, t[i].column, "expected formal=actual" );
        auto const formal = t[i].text.substr( 0, eq );
        auto const act = t[i].text.substr( eq + 1u );
        if ( formal == c.output )
        {
          out = act;
          out_col = t[i].column;
          continue;
        }
        auto it = std::find( c.pins.begin(), c.pins.end(), formal );
        if ( it == c.pins.end() )
          throw parse_error( l.line, t[i].column, "cell '" + c.name + "' has no pin '" + formal + "'" );
        actual[it - c.pins.begin()] = act;
        pos[it - c.pins.begin()] = { l.line, t[i].column };
      }
      if ( out.empty() )
        throw parse_error( l.line, t[0].column, "cell output '" + c.output + "' is not connected" );
      for ( size_t i = 0; i < actual.size(); ++i )
        if ( actual[i].empty() )
          throw parse_error( l.line, t[0].column, "cell pin '" + c.pins[i] + "' is not connected" );
      auto& d = define( out, l.line, out_col );
      d.is_gate = true;
      d.inputs = actual;
      d.input_pos = pos;
      d.function = ( c.kind == cell_kind::dff || c.kind == cell_kind::splitter ) ? truth_table( 0x2 ) : c.function;
    }
    else if ( cmd == ".latch" )
      throw parse_error( l.line, t[0].column, "sequential elements (.latch) are not supported" );
    else if ( cmd == ".end" )
      ended = true;
    else if ( cmd == ".default_input_arrival" || cmd == ".default_output_required" || cmd == ".input_arrival" || cmd == ".output_required" )
      continue;
    else
      throw parse_error( l.line, t[0].column, "unsupported construct " + cmd );
  }

  std::unordered_map<std::string, signal> pis;
  for ( auto const& [name, where] : inputs )
  {
    if ( pis.count( name ) )
      throw parse_error( where.first, where.second, "duplicate primary input '" + name + "'" );
    pis[name] = g.create_pi( name );
  }
  detail::netlist_resolver resolver( g, defs, pis );
  for ( auto const& [name, where] : outputs )
    g.create_po( resolver.resolve( name, where.first, where.second ), name );
  return g;
}

/*! \brief Reads ASCII AIGER (`aag`). Latches are rejected. */
inline subject_graph parse_aiger( std::string const& text )
{
  std::istringstream in( text );
  std::string raw;
  uint32_t line_no = 0;
  auto next_line = [&]( char const* what ) -> std::istringstream {
    if ( !std::getline( in, raw ) )
      throw parse_error( line_no + 1u, 1u, std::string( "unexpected end of file, expected " ) + what );
    ++line_no;
    return std::istringstream( raw );
  };
  auto read_uint = [&]( std::istringstream& ls, char const* what ) -> uint64_t {
    uint64_t v;
    auto const col = static_cast<uint32_t>( ls.tellg() < 0 ? raw.size() : static_cast<size_t>( ls.tellg() ) ) + 1u;
    if ( !( ls >> v ) )
      throw parse_error( line_no, col, std::string( "expected " ) + what );
    return v;
  };

  auto hdr = next_line( "header" );
  std::string magic;
  hdr >> magic;
  if ( magic != "aag" )
    throw parse_error( 1u, 1u, magic == "aig" ? "binary AIGER is not supported, use aag" : "missing 'aag' header" );
  auto const M = read_uint( hdr, "M" );
  auto const I = read_uint( hdr, "I" );
  auto const L = read_uint( hdr, "L" );
  auto const O = read_uint( hdr, "O" );
  auto const A = read_uint( hdr, "A" );
  if ( L != 0 )
    throw parse_error( 1u, 1u, "sequential elements (latches) are not supported" );
  if ( I + A > M )
    throw parse_error( 1u, 1u, "header inconsistent: I + A exceeds M" );

  subject_graph g;
  std::vector<int64_t> input_var;
  std::vector<uint64_t> output_lits;
  std::vector<uint32_t> output_lines;
  struct and_def
  {
    uint64_t rhs0, rhs1;
    uint32_t line;
  };
  std::unordered_map<uint64_t, and_def> ands;
  std::unordered_map<uint64_t, uint32_t> input_of_var;

  for ( uint64_t i = 0; i < I; ++i )
  {
    auto ls = next_line( "input" );
    auto const lit = read_uint( ls, "input literal" );
    if ( lit < 2 || ( lit & 1u ) || lit / 2 > M )
      throw parse_error( line_no, 1u, "invalid input literal " + std::to_string( lit ) );
    if ( input_of_var.count( lit / 2 ) )
      throw parse_error( line_no, 1u, "input literal " + std::to_string( lit ) + " defined twice" );
    input_of_var[lit / 2] = static_cast<uint32_t>( i );
    input_var.push_back( static_cast<int64_t>( lit / 2 ) );
  }
  for ( uint64_t i = 0; i < O; ++i )
  {
    auto ls = next_line( "output" );
    auto const lit = read_uint( ls, "output literal" );
    if ( lit / 2 > M )
      throw parse_error( line_no, 1u, "output literal " + std::to_string( lit ) + " exceeds M" );
    output_lits.push_back( lit );
    output_lines.push_back( line_no );
  }
  for ( uint64_t i = 0; i < A; ++i )
  {
    auto ls = next_line( "and gate" );
    auto const lhs = read_uint( ls, "and lhs" );
    auto const r0 = read_uint( ls, "and rhs0" );
    auto const r1 = read_uint( ls, "and rhs1" );
    if ( lhs < 2 || ( lhs & 1u ) || lhs / 2 > M || r0 / 2 > M || r1 / 2 > M )
      throw parse_error( line_no, 1u, "invalid and gate literals" );
    if ( ands.count( lhs / 2 ) || input_of_var.count( lhs / 2 ) )
      throw parse_error( line_no, 1u, "variable " + std::to_string( lhs / 2 ) + " defined twice" );
    ands[lhs / 2] = { r0, r1, line_no };
  }

  std::vector<std::string> in_names( I ), out_names( O );
  while ( std::getline( in, raw ) )
  {
    ++line_no;
    if ( raw.empty() )
      continue;
    if ( raw[0] == 'c' )
      break;
    auto const sp = raw.find( ' ' );
    if ( ( raw[0] != 'i' && raw[0] != 'o' && raw[0] != 'l' ) || sp == std::string::npos )
      throw parse_error( line_no, 1u, "malformed symbol table entry" );
    uint64_t idx = 0;
    try
    {
      idx = std::stoull( raw.substr( 1, sp - 1 ) );
    }
    catch ( std::exception const& )
    {
      throw parse_error( line_no, 2u, "malformed symbol index" );
    }
    auto const name = raw.substr( sp + 1 );
    if ( raw[0] == 'i' && idx < I )
      in_names[idx] = name;
    else if ( raw[0] == 'o' && idx < O )
      out_names[idx] = name;
    else
      throw parse_error( line_no, 2u, "symbol index out of range" );
  }

  std::unordered_map<uint64_t, signal> value;
  value[0] = g.get_constant( false );
  for ( uint64_t i = 0; i < I; ++i )
    value[input_var[i]] = g.create_pi( in_names[i].empty() ? "i" + std::to_string( i ) : in_names[i] );

  std::unordered_set<uint64_t> visiting;
  auto resolve = [&]( uint64_t lit, uint32_t line ) -> signal {
    auto const var = lit / 2;
    if ( !value.count( var ) )
    {
      std::vector<std::pair<uint64_t, int>> stack{ { var, 0 } };
      if ( !ands.count( var ) )
        throw parse_error( line, 1u, "undefined literal " + std::to_string( lit ) );
      visiting.insert( var );
      while ( !stack.empty() )
      {
        auto& [v, state] = stack.back();
        auto const& d = ands.at( v );
        if ( state < 2 )
        {
          auto const child = ( state == 0 ? d.rhs0 : d.rhs1 ) / 2;
          ++state;
          if ( value.count( child ) )
            continue;
          if ( !ands.count( child ) )
            throw parse_error( d.line, 1u, "undefined literal " + std::to_string( state == 1 ? d.rhs0 : d.rhs1 ) );
          if ( visiting.count( child ) )
            throw parse_error( d.line, 1u, "cyclic definition through variable " + std::to_string( child ) );
          visiting.insert( child );
          stack.push_back( { child, 0 } );
          continue;
        }
        auto const a = value.at( d.rhs0 / 2 ) ^ static_cast<bool>( d.rhs0 & 1u );
        auto const b = value.at( d.rhs1 / 2 ) ^ static_cast<bool>( d.rhs1 & 1u );
        value[v] = g.create_and( a, b );
        visiting.erase( v );
        stack.pop_back();
      }
    }
    return value.at( var ) ^ static_cast<bool>( lit & 1u );
  };
  for ( uint64_t i = 0; i < O; ++i )
    g.create_po( resolve( output_lits[i], output_lines[i] ), out_names[i].empty() ? "o" + std::to_string( i ) : out_names[i] );
  return g;
}

inline subject_graph parse_netlist( std::string const& text, netlist_format format, cell_library const* lib = nullptr )
{
  switch ( format )
  {
  case netlist_format::blif:
    return parse_blif( text, lib );
  case netlist_format::aiger_ascii:
    return parse_aiger( text );
  default:
    throw error( error_stage::parse, "reading this format is not supported" );
  }
}

inline std::string read_text_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw error( error_stage::io, "cannot open '" + path + "'" );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline netlist_format format_from_path( std::string const& path )
{
  auto const dot = path.rfind( '.' );
  auto const ext = dot == std::string::npos ? std::string{} : path.substr( dot );
  if ( ext == ".aag" )
    return netlist_format::aiger_ascii;
  if ( ext == ".v" )
    return netlist_format::verilog;
  return netlist_format::blif;
}

inline subject_graph read_netlist_file( std::string const& path, cell_library const* lib = nullptr )
{
  auto g = parse_netlist( read_text_file( path ), format_from_path( path ), lib );
  if ( g.name == "top" || g.name.empty() )
  {
    auto base = path.substr( path.find_last_of( '/' ) + 1u );
    g.name = base.substr( 0, base.rfind( '.' ) );
  }
  return g;
}

namespace detail
{

/* unique internal signal names that avoid every PI/PO name */
class name_pool
{
public:
  void reserve( std::string const& n ) { used_.insert( n ); }

  std::string fresh( std::string const& base )
  {
    auto name = base;
    while ( used_.count( name ) )
      name += "_";
    used_.insert( name );
    return name;
  }

private:
  std::unordered_set<std::string> used_;
};

inline bool is_verilog_identifier( std::string const& s )
{
  if ( s.empty() || !( std::isalpha( static_cast<unsigned char>( s[0] ) ) || s[0] == '_' ) )
    return false;
  for ( char c : s )
    if ( !( std::isalnum( static_cast<unsigned char>( c ) ) || c == '_' || c == '$' ) )
      return false;
  return true;
}

inline std::string verilog_name( std::string const& s )
{
  return is_verilog_identifier( s ) ? s : "\\" + s + " ";
}

} // namespace detail

inline std::string write_blif( subject_graph const& g )
{
  detail::name_pool pool;
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    pool.reserve( g.pi_name( i ) );
  for ( auto const& po : g.pos() )
    pool.reserve( po.name );

  std::vector<std::string> names( g.size() );
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    names[g.pis()[i]] = g.pi_name( i );

  std::ostringstream os;
  os << ".model " << g.name << "\n.inputs";
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    os << " " << g.pi_name( i );
  os << "\n.outputs";
  for ( auto const& po : g.pos() )
    os << " " << po.name;
  os << "\n";

  g.foreach_gate( [&]( node_id n ) {
    names[n] = pool.fresh( "n" + std::to_string( n ) );
    auto const a = g.fanin0( n ), b = g.fanin1( n );
    os << ".names " << names[a.node()] << " " << names[b.node()] << " " << names[n] << "\n"
       << ( a.complemented() ? '0' : '1' ) << ( b.complemented() ? '0' : '1' ) << " 1\n";
  } );

  for ( auto const& po : g.pos() )
  {
    auto const d = po.driver;
    if ( g.is_constant( d.node() ) )
    {
      os << ".names " << po.name << "\n";
      if ( d.complemented() )
        os << "1\n";
      continue;
    }
    if ( !d.complemented() && names[d.node()] == po.name )
      continue;
    os << ".names " << names[d.node()] << " " << po.name << "\n"
       << ( d.complemented() ? "0 1\n" : "1 1\n" );
  }
  os << ".end\n";
  return os.str();
}

inline std::string write_verilog( subject_graph const& g )
{
  detail::name_pool pool;
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    pool.reserve( g.pi_name( i ) );
  for ( auto const& po : g.pos() )
    pool.reserve( po.name );

  std::vector<std::string> names( g.size() );
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    names[g.pis()[i]] = detail::verilog_name( g.pi_name( i ) );

  std::ostringstream os, body;
  os << "module " << detail::verilog_name( g.name ) << "(";
  bool first = true;
  for ( uint32_t i = 0; i < g.num_pis(); ++i, first = false )
    os << ( first ? "" : ", " ) << detail::verilog_name( g.pi_name( i ) );
  for ( auto const& po : g.pos() )
  {
    os << ( first ? "" : ", " ) << detail::verilog_name( po.name );
    first = false;
  }
  os << ");\n";
  for ( uint32_t i = 0; i < g.num_pis(); ++i )
    os << "  input " << detail::verilog_name( g.pi_name( i ) ) << ";\n";
  for ( auto const& po : g.pos() )
    os << "  output " << detail::verilog_name( po.name ) << ";\n";

  auto lit = [&]( signal s ) {
    if ( g.is_constant( s.node() ) )
      return std::string( s.complemented() ? "1'b1" : "1'b0" );
    return ( s.complemented() ? "~" : "" ) + names[s.node()];
  };
  g.foreach_gate( [&]( node_id n ) {
    names[n] = pool.fresh( "n" + std::to_string( n ) );
    os << "  wire " << names[n] << ";\n";
    body << "  assign " << names[n] << " = " << lit( g.fanin0( n ) ) << " & " << lit( g.fanin1( n ) ) << ";\n";
  } );
  for ( auto const& po : g.pos() )
    body << "  assign " << detail::verilog_name( po.name ) << " = " << lit( po.driver ) << ";\n";
  os << body.str() << "endmodule\n";
  return os.str();
}

inline std::string write_netlist( subject_graph const& g, netlist_format format )
{
  switch ( format )
  {
  case netlist_format::blif:
    return write_blif( g );
  case netlist_format::verilog:
    return write_verilog( g );
  default:
    throw error( error_stage::io, "writing this format is not supported" );
  }
}

} // namespace pbmap
