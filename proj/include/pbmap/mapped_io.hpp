#pragma once

#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "library.hpp"
#include "mapped_network.hpp"
#include "netlist_io.hpp"

namespace pbmap
{

namespace detail
{

/* net names for every instance output; PIs keep their names, POs are
 * connected through buffers */
inline std::vector<std::string> mapped_net_names( mapped_network const& net )
{
  name_pool pool;
  for ( auto const& n : net.pi_names )
    pool.reserve( n );
  for ( auto const& po : net.pos )
    pool.reserve( po.name );
  std::vector<std::string> names( net.size() );
  for ( uint32_t i = 0; i < net.pis.size(); ++i )
    names[net.pis[i]] = net.pi_names[i];
  for ( uint32_t i = 0; i < net.size(); ++i )
    if ( net.instances[i].kind != instance_kind::pi )
      names[i] = pool.fresh( "w" + std::to_string( i ) );
  return names;
}

} // namespace detail

/*! \brief Writes the mapped network as BLIF with one `.gate` per instance.
 * DFFs and splitters appear as ordinary cells. */
inline std::string write_mapped_blif( mapped_network const& net )
{
  auto const& lib = net.library();
  auto const names = detail::mapped_net_names( net );
  std::ostringstream os;
  os << ".model " << net.name << "\n.inputs";
  for ( auto const& n : net.pi_names )
    os << " " << n;
  os << "\n.outputs";
  for ( auto const& po : net.pos )
    os << " " << po.name;
  os << "\n";

  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const& inst = net.instances[i];
    if ( inst.kind == instance_kind::pi )
      continue;
    if ( inst.kind == instance_kind::constant )
    {
      os << ".names " << names[i] << "\n";
      if ( inst.aux )
        os << "1\n";
      continue;
    }
    auto const& c = lib[inst.cell];
    os << ".gate " << c.name;
    for ( uint32_t p = 0; p < inst.fanins.size(); ++p )
      os << " " << c.pins[p] << "=" << names[inst.fanins[p]];
    os << " " << c.output << "=" << names[i] << "\n";
  }
  for ( auto const& po : net.pos )
    if ( names[po.driver] != po.name )
      os << ".names " << names[po.driver] << " " << po.name << "\n1 1\n";
  os << ".end\n";
  return os.str();
}

/*! \brief Structural Verilog with one cell instance per line. */
inline std::string write_mapped_verilog( mapped_network const& net )
{
  using detail::verilog_name;
  auto const& lib = net.library();
  auto const names = detail::mapped_net_names( net );
  std::ostringstream os;
  os << "module " << verilog_name( net.name ) << "(";
  bool first = true;
  for ( auto const& n : net.pi_names )
  {
    os << ( first ? "" : ", " ) << verilog_name( n );
    first = false;
  }
  for ( auto const& po : net.pos )
  {
    os << ( first ? "" : ", " ) << verilog_name( po.name );
    first = false;
  }
  os << ");\n";
  for ( auto const& n : net.pi_names )
    os << "  input " << verilog_name( n ) << ";\n";
  for ( auto const& po : net.pos )
    os << "  output " << verilog_name( po.name ) << ";\n";
  for ( uint32_t i = 0; i < net.size(); ++i )
    if ( net.instances[i].kind != instance_kind::pi )
      os << "  wire " << verilog_name( names[i] ) << ";\n";

  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const& inst = net.instances[i];
    if ( inst.kind == instance_kind::pi )
      continue;
    if ( inst.kind == instance_kind::constant )
    {
      os << "  assign " << verilog_name( names[i] ) << " = 1'b" << ( inst.aux ? 1 : 0 ) << ";\n";
      continue;
    }
    auto const& c = lib[inst.cell];
    os << "  " << c.name << " u" << i << " (";
    for ( uint32_t p = 0; p < inst.fanins.size(); ++p )
      os << "." << c.pins[p] << "(" << verilog_name( names[inst.fanins[p]] ) << "), ";
    os << "." << c.output << "(" << verilog_name( names[i] ) << "));\n";
  }
  for ( auto const& po : net.pos )
    if ( names[po.driver] != po.name )
      os << "  assign " << verilog_name( po.name ) << " = " << verilog_name( names[po.driver] ) << ";\n";
  os << "endmodule\n";
  return os.str();
}

/*! \brief Reads a BLIF written by write_mapped_blif back into a mapped
 * network. Only `.gate` lines, constant `.names` and single-input buffers to
 * outputs are accepted. Splitter trees are not reconstructed. */
inline mapped_network parse_mapped_blif( std::string const& text, cell_library const& lib )
{
  struct definition
  {
    uint32_t line{ 0 };
    int32_t cell{ -1 }; /* -1 constant, -2 buffer */
    std::vector<std::string> inputs;
    bool value{ false };
  };
  auto const lines = detail::blif_lines( text );
  mapped_network net( lib );
  std::vector<std::string> outputs;
  std::unordered_map<std::string, definition> defs;
  std::unordered_map<std::string, uint32_t> built;
  definition* open = nullptr;

  for ( auto const& l : lines )
  {
    auto const& t = l.tokens;
    auto const& cmd = t[0].text;
    if ( cmd[0] != '.' )
    {
      if ( !open )
        throw parse_error( l.line, t[0].column, "cube line outside of .names" );
      if ( open->cell == -1 && t.size() == 1u && t[0].text == "1" )
        open->value = true;
      else if ( !( open->cell == -2 && t.size() == 2u && t[0].text == "1" && t[1].text == "1" ) )
        throw parse_error( l.line, t[0].column, "only constants and buffers are allowed as .names in a mapped netlist" );
      continue;
    }
    open = nullptr;
    if ( cmd == ".model" )
      net.name = t.size() > 1u ? t[1].text : net.name;
    else if ( cmd == ".inputs" )
      for ( size_t i = 1; i < t.size(); ++i )
        built[t[i].text] = net.create_pi( t[i].text );
    else if ( cmd == ".outputs" )
      for ( size_t i = 1; i < t.size(); ++i )
        outputs.push_back( t[i].text );
    else if ( cmd == ".end" )
      break;
    else if ( cmd == ".names" || cmd == ".gate" )
    {
      definition d;
      d.line = l.line;
      std::string out;
      if ( cmd == ".names" )
      {
        if ( t.size() != 2u && t.size() != 3u )
          throw parse_error( l.line, t[0].column, "only constants and buffers are allowed as .names in a mapped netlist" );
        d.cell = t.size() == 2u ? -1 : -2;
        if ( t.size() == 3u )
          d.inputs.push_back( t[1].text );
        out = t.back().text;
      }
      else
      {
        if ( t.size() < 2u )
          throw parse_error( l.line, t[0].column, ".gate needs a cell name" );
        auto const ci = lib.find( t[1].text );
        if ( !ci )
          throw parse_error( l.line, t[1].column, "unknown cell '" + t[1].text + "'" );
        auto const& c = lib[*ci];
        d.cell = static_cast<int32_t>( *ci );
        d.inputs.resize( c.num_inputs() );
        for ( size_t i = 2; i < t.size(); ++i )
        {
          auto const eq = t[i].text.find( '=' );
          if ( eq == std::string::npos )
            throw parse_error( l.line, t[i].column, "expected formal=actual" );
          auto const formal = t[i].text.substr( 0, eq );
          auto const actual = t[i].text.substr( eq + 1u );
          if ( formal == c.output )
          {
            out = actual;
            continue;
          }
          auto it = std::find( c.pins.begin(), c.pins.end(), formal );
          if ( it == c.pins.end() )
            throw parse_error( l.line, t[i].column, "cell '" + c.name + "' has no pin '" + formal + "'" );
          d.inputs[it - c.pins.begin()] = actual;
        }
        if ( out.empty() )
          throw parse_error( l.line, t[0].column, "cell output is not connected" );
        for ( auto const& in : d.inputs )
          if ( in.empty() )
            throw parse_error( l.line, t[0].column, "cell pin is not connected" );
      }
      if ( defs.count( out ) || built.count( out ) )
        throw parse_error( l.line, t.back().column, "signal '" + out + "' has multiple drivers" );
      open = &( defs[out] = std::move( d ) );
    }
    else
      throw parse_error( l.line, t[0].column, "unsupported construct " + cmd + " in a mapped netlist" );
  }

  /* instantiate in dependency order */
  std::unordered_map<std::string, bool> in_progress;
  auto build = [&]( std::string const& root ) {
    std::vector<std::pair<std::string, bool>> stack{ { root, false } };
    while ( !stack.empty() )
    {
      auto [name, expanded] = stack.back();
      stack.pop_back();
      if ( built.count( name ) )
        continue;
      auto it = defs.find( name );
      if ( it == defs.end() )
        throw parse_error( 0, 0, "signal '" + name + "' is never driven" );
      auto const& d = it->second;
      if ( expanded )
      {
        std::vector<uint32_t> fanins;
        for ( auto const& in : d.inputs )
          fanins.push_back( built.at( in ) );
        uint32_t id;
        if ( d.cell == -1 )
          id = net.create_constant( d.value );
        else if ( d.cell == -2 )
          id = fanins[0];
        else if ( lib[d.cell].kind == cell_kind::dff )
          id = net.create_dff( fanins[0] );
        else if ( lib[d.cell].kind == cell_kind::splitter )
          id = net.create_splitter( fanins[0] );
        else
          id = net.create_gate( static_cast<uint32_t>( d.cell ), std::move( fanins ) );
        built[name] = id;
        in_progress.erase( name );
        continue;
      }
      if ( in_progress[name] )
        throw parse_error( d.line, 0, "combinational cycle through '" + name + "'" );
      in_progress[name] = true;
      stack.push_back( { name, true } );
      for ( auto const& in : d.inputs )
        if ( !built.count( in ) )
          stack.push_back( { in, false } );
    }
  };
  for ( auto const& o : outputs )
  {
    build( o );
    net.create_po( built.at( o ), o );
  }
  return net;
}

} // namespace pbmap
