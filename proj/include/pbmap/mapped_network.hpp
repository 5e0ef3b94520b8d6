#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "library.hpp"

namespace pbmap
{

enum class instance_kind : uint8_t
{
  pi,
  constant,
  gate,
  dff,
  splitter
};

/*! \brief One cell instance with a single output. Splitters drive two sinks. */
struct instance
{
  instance_kind kind{ instance_kind::gate };
  uint32_t cell{ UINT32_MAX };
  std::vector<uint32_t> fanins;
  /* pi index for PIs, value for constants */
  uint32_t aux{ 0 };
};

struct mapped_output
{
  uint32_t driver;
  std::string name;
};

/*! \brief Sink of an instance output: an instance pin or a PO. */
struct sink
{
  uint32_t instance; /* UINT32_MAX for a PO */
  uint32_t pin;      /* pin index, or PO index */

  bool is_po() const { return instance == UINT32_MAX; }
};

struct splitter_tree
{
  uint32_t source;
  /*! \brief Original sinks with their criticality and splitter depth. */
  std::vector<sink> sinks;
  std::vector<uint32_t> criticality;
  std::vector<uint32_t> depth;
  uint32_t num_splitters{ 0 };
};

/*! \brief Gate-level SFQ netlist. Instances are stored in topological order. */
class mapped_network
{
public:
  explicit mapped_network( cell_library const& lib ) : lib_( &lib ) {}

  std::string name{ "top" };
  std::vector<instance> instances;
  std::vector<uint32_t> pis;
  std::vector<std::string> pi_names;
  std::vector<mapped_output> pos;

  /*! \brief DFFs added at POs by balancing (included in num_dffs). */
  uint32_t po_pad_dffs{ 0 };
  std::vector<splitter_tree> splitter_trees;

  /*! \brief Planned clocked height per instance from cover extraction, empty
   * when there is no plan. */
  std::vector<uint32_t> schedule;

  cell_library const& library() const { return *lib_; }

  uint32_t create_pi( std::string const& name )
  {
    instances.push_back( { instance_kind::pi, UINT32_MAX, {}, static_cast<uint32_t>( pis.size() ) } );
    pis.push_back( size() - 1u );
    pi_names.push_back( name );
    return size() - 1u;
  }

  uint32_t create_constant( bool value )
  {
    instances.push_back( { instance_kind::constant, UINT32_MAX, {}, static_cast<uint32_t>( value ) } );
    return size() - 1u;
  }

  uint32_t create_gate( uint32_t cell, std::vector<uint32_t> fanins )
  {
    if ( ( *lib_ )[cell].num_inputs() != fanins.size() )
      throw internal_error( "pin count mismatch for cell " + ( *lib_ )[cell].name );
    instances.push_back( { instance_kind::gate, cell, std::move( fanins ), 0u } );
    return size() - 1u;
  }

  uint32_t create_dff( uint32_t fanin )
  {
    instances.push_back( { instance_kind::dff, lib_->dff, { fanin }, 0u } );
    return size() - 1u;
  }

  uint32_t create_splitter( uint32_t fanin )
  {
    instances.push_back( { instance_kind::splitter, lib_->splitter, { fanin }, 0u } );
    return size() - 1u;
  }

  void create_po( uint32_t driver, std::string const& name )
  {
    pos.push_back( { driver, name } );
  }

  uint32_t size() const { return static_cast<uint32_t>( instances.size() ); }

  uint32_t count( instance_kind k ) const
  {
    return static_cast<uint32_t>( std::count_if( instances.begin(), instances.end(), [k]( auto const& i ) { return i.kind == k; } ) );
  }

  uint32_t num_gates() const { return count( instance_kind::gate ); }
  uint32_t num_dffs() const { return count( instance_kind::dff ); }
  uint32_t num_splitters() const { return count( instance_kind::splitter ); }

  std::vector<std::vector<sink>> fanouts() const
  {
    std::vector<std::vector<sink>> fo( size() );
    for ( uint32_t i = 0; i < size(); ++i )
      for ( uint32_t p = 0; p < instances[i].fanins.size(); ++p )
        fo[instances[i].fanins[p]].push_back( { i, p } );
    for ( uint32_t o = 0; o < pos.size(); ++o )
      fo[pos[o].driver].push_back( { UINT32_MAX, o } );
    return fo;
  }

  /*! \brief Clocked heights: gates and DFFs add one level, splitters none. */
  std::vector<uint32_t> heights() const
  {
    std::vector<uint32_t> h( size(), 0u );
    for ( uint32_t i = 0; i < size(); ++i )
    {
      auto const& inst = instances[i];
      uint32_t m = 0;
      for ( auto f : inst.fanins )
      {
        if ( f >= i )
          throw internal_error( "mapped network is not in topological order" );
        m = std::max( m, h[f] );
      }
      switch ( inst.kind )
      {
      case instance_kind::gate:
      case instance_kind::dff:
        h[i] = m + 1u;
        break;
      case instance_kind::splitter:
        h[i] = m;
        break;
      default:
        h[i] = 0u;
      }
    }
    return h;
  }

  /*! \brief Largest clocked height over non-constant PO drivers. */
  uint32_t depth() const
  {
    auto const h = heights();
    uint32_t d = 0;
    for ( auto const& po : pos )
      if ( instances[po.driver].kind != instance_kind::constant )
        d = std::max( d, h[po.driver] );
    return d;
  }

  double instance_area( uint32_t i ) const
  {
    auto const c = instances[i].cell;
    return c == UINT32_MAX ? 0.0 : ( *lib_ )[c].area;
  }

  uint32_t instance_jj( uint32_t i ) const
  {
    auto const c = instances[i].cell;
    return c == UINT32_MAX ? 0u : ( *lib_ )[c].jj_count;
  }

  double area() const
  {
    double a = 0.0;
    for ( uint32_t i = 0; i < size(); ++i )
      a += instance_area( i );
    return a;
  }

  uint64_t jj_count() const
  {
    uint64_t j = 0;
    for ( uint32_t i = 0; i < size(); ++i )
      j += instance_jj( i );
    return j;
  }

private:
  cell_library const* lib_;
};

/*! \brief Combinational simulation with DFFs and splitters as wires. Each
 * word carries 64 patterns; pi_values has one word per PI. */
inline std::vector<uint64_t> simulate( mapped_network const& net, std::vector<uint64_t> const& pi_values )
{
  auto const& lib = net.library();
  std::vector<uint64_t> v( net.size(), 0u );
  for ( uint32_t i = 0; i < net.size(); ++i )
  {
    auto const& inst = net.instances[i];
    switch ( inst.kind )
    {
    case instance_kind::pi:
      v[i] = pi_values[inst.aux];
      break;
    case instance_kind::constant:
      v[i] = inst.aux ? ~uint64_t( 0 ) : 0u;
      break;
    case instance_kind::dff:
    case instance_kind::splitter:
      v[i] = v[inst.fanins[0]];
      break;
    case instance_kind::gate:
    {
      auto const f = static_cast<uint32_t>( lib[inst.cell].function );
      v[i] = inst.fanins.size() == 1u ? tt_apply1( f, v[inst.fanins[0]] ) : tt_apply2( f, v[inst.fanins[0]], v[inst.fanins[1]] );
      break;
    }
    }
  }
  std::vector<uint64_t> out;
  for ( auto const& po : net.pos )
    out.push_back( v[po.driver] );
  return out;
}

/*! \brief Cycle-accurate simulation: every gate and DFF latches its inputs
 * of the previous cycle, splitters are transparent. Returns the PO values of
 * each cycle for the given per-cycle PI words. */
inline std::vector<std::vector<uint64_t>> simulate_clocked( mapped_network const& net, std::vector<std::vector<uint64_t>> const& pi_stream )
{
  auto const& lib = net.library();
  std::vector<uint64_t> state( net.size(), 0u ), next( net.size(), 0u );
  std::vector<std::vector<uint64_t>> out;
  for ( auto const& pis : pi_stream )
  {
    /* combinational settle of PIs, constants and splitters using the current register state */
    for ( uint32_t i = 0; i < net.size(); ++i )
    {
      auto const& inst = net.instances[i];
      if ( inst.kind == instance_kind::pi )
        state[i] = pis[inst.aux];
      else if ( inst.kind == instance_kind::constant )
        state[i] = inst.aux ? ~uint64_t( 0 ) : 0u;
      else if ( inst.kind == instance_kind::splitter )
        state[i] = state[inst.fanins[0]];
    }
    std::vector<uint64_t> o;
    for ( auto const& po : net.pos )
      o.push_back( state[po.driver] );
    out.push_back( std::move( o ) );
    for ( uint32_t i = 0; i < net.size(); ++i )
    {
      auto const& inst = net.instances[i];
      if ( inst.kind == instance_kind::dff )
        next[i] = state[inst.fanins[0]];
      else if ( inst.kind == instance_kind::gate )
      {
        auto const f = static_cast<uint32_t>( lib[inst.cell].function );
        next[i] = inst.fanins.size() == 1u ? tt_apply1( f, state[inst.fanins[0]] ) : tt_apply2( f, state[inst.fanins[0]], state[inst.fanins[1]] );
      }
    }
    for ( uint32_t i = 0; i < net.size(); ++i )
      if ( net.instances[i].kind == instance_kind::dff || net.instances[i].kind == instance_kind::gate )
        state[i] = next[i];
  }
  return out;
}

} // namespace pbmap
