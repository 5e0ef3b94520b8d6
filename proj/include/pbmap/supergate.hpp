#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cuts.hpp"
#include "errors.hpp"
#include "library.hpp"
#include "truth_table.hpp"

namespace pbmap
{

/*! \brief Gate inside a supergate. A fanin >= 0 refers to an earlier gate,
 * a fanin < 0 to variable (-1 - fanin). */
struct sg_gate
{
  uint32_t cell{ 0 };
  uint8_t num_fanins{ 0 };
  std::array<int8_t, 2> fanin{ 0, 0 };
};

constexpr int8_t sg_var_ref( uint32_t var ) { return static_cast<int8_t>( -1 - static_cast<int>( var ) ); }
constexpr bool sg_is_var( int8_t ref ) { return ref < 0; }
constexpr uint32_t sg_var_of( int8_t ref ) { return static_cast<uint32_t>( -1 - ref ); }

/*! \brief A read-once tree of library gates, each variable used once. */
struct supergate
{
  uint32_t id{ 0 };
  /*! \brief Gates in post-order, root last. */
  std::vector<sg_gate> gates;
  uint32_t num_vars{ 0 };
  truth_table function{ 0 };
  double area{ 0.0 };
  uint32_t jj_count{ 0 };
  /*! \brief Clocked gate levels on the longest root-to-variable path. */
  uint32_t depth{ 0 };
  /*! \brief Clocked gates between each variable and the output, inclusive. */
  std::array<uint8_t, max_tt_vars> pin_depth{};
  /*! \brief DFFs balancing the tree when all variables arrive together, with
   * registers pushed towards the inputs. */
  uint32_t internal_dffs{ 0 };
  std::string name;

  uint32_t root_cell() const { return gates.back().cell; }
};

struct supergate_params
{
  /*! \brief Maximum number of variables. */
  uint32_t max_vars{ 5u };

  /*! \brief Maximum clocked depth. */
  uint32_t max_depth{ 3u };

  /*! \brief Runners-up kept per function besides the best one. The default
   * keeps every distinct gate-tree shape, which tree optimality needs. */
  uint32_t runners_up{ UINT32_MAX - 1u };

  /*! \brief Stop once this many supergates are retained. */
  uint32_t max_count{ 200000u };

  /*! \brief Wall-clock budget for generation in seconds. */
  double time_budget{ 60.0 };
};

struct supergate_stats
{
  uint64_t candidates{ 0 };
  uint32_t retained{ 0 };
  uint32_t functions{ 0 };
  uint32_t levels_done{ 0 };
  bool budget_exhausted{ false };
  double runtime{ 0.0 };
};

struct function_key
{
  truth_table function;
  uint32_t num_vars;

  bool operator==( function_key const& o ) const { return function == o.function && num_vars == o.num_vars; }
};

struct function_key_hash
{
  size_t operator()( function_key const& k ) const
  {
    return static_cast<size_t>( detail::mix64( k.function * 7u + k.num_vars ) );
  }
};

/*! \brief Supergates plus the exact-function match table. */
class supergate_library
{
public:
  cell_library const* lib{ nullptr };
  supergate_params params;
  supergate_stats stats;
  std::vector<supergate> gates;
  std::unordered_map<function_key, std::vector<uint32_t>, function_key_hash> table;

  std::span<uint32_t const> lookup( truth_table f, uint32_t num_vars ) const
  {
    auto it = table.find( { f & tt_mask( num_vars ), num_vars } );
    if ( it == table.end() )
      return {};
    return it->second;
  }

  supergate const& operator[]( uint32_t i ) const { return gates[i]; }
  uint32_t size() const { return static_cast<uint32_t>( gates.size() ); }

  /*! \brief The inverter as a one-variable supergate. */
  uint32_t inverter_gate{ UINT32_MAX };
};

enum class phase : uint8_t
{
  positive = 0,
  negative = 1
};

/*! \brief Supergates implementing f (positive) or its complement (negative). */
inline std::span<uint32_t const> boolean_match( supergate_library const& sgl, truth_table f, uint32_t num_vars, phase ph )
{
  auto const mask = tt_mask( num_vars );
  return sgl.lookup( ph == phase::positive ? ( f & mask ) : ( ~f & mask ), num_vars );
}

/*! \brief Evaluates the supergate on word-parallel variable values. */
inline truth_table evaluate_supergate( supergate const& sg, cell_library const& lib, std::span<truth_table const> vars )
{
  std::array<truth_table, 16> val{};
  for ( size_t i = 0; i < sg.gates.size(); ++i )
  {
    auto const& g = sg.gates[i];
    auto in = [&]( int8_t r ) { return sg_is_var( r ) ? vars[sg_var_of( r )] : val[r]; };
    auto const& c = lib[g.cell];
    val[i] = g.num_fanins == 1u ? tt_apply1( static_cast<uint32_t>( c.function ), in( g.fanin[0] ) )
                                : tt_apply2( static_cast<uint32_t>( c.function ), in( g.fanin[0] ), in( g.fanin[1] ) );
  }
  return val[sg.gates.size() - 1u];
}

inline std::string supergate_expression( supergate const& sg, cell_library const& lib )
{
  std::vector<std::string> s( sg.gates.size() );
  for ( size_t i = 0; i < sg.gates.size(); ++i )
  {
    auto const& g = sg.gates[i];
    std::string e = lib[g.cell].name + "(";
    for ( uint32_t j = 0; j < g.num_fanins; ++j )
    {
      if ( j )
        e += ",";
      e += sg_is_var( g.fanin[j] ) ? "x" + std::to_string( sg_var_of( g.fanin[j] ) ) : s[g.fanin[j]];
    }
    s[i] = e + ")";
  }
  return s.back();
}

namespace detail
{

/* building blocks of one level of composition */
struct sg_child
{
  int32_t index; /* -1 for a bare variable */
  uint32_t num_vars;
  uint32_t depth;
};

class supergate_generator
{
public:
  supergate_generator( cell_library const& lib, supergate_params const& ps )
      : lib_( lib ), ps_( ps ) {}

  supergate_library run()
  {
    if ( ps_.max_vars < 1u || ps_.max_vars > max_tt_vars )
      throw config_error( "supergate variable limit must be in [1, 6]" );
    if ( ps_.max_depth < 1u || ps_.max_depth > 6u )
      throw config_error( "supergate depth must be in [1, 6]" );

    auto const start = std::chrono::steady_clock::now();
    start_ = start;
    for ( uint32_t level = 1; level <= ps_.max_depth && !exhausted_; ++level )
    {
      generate_level( level );
      if ( !exhausted_ )
        stats_.levels_done = level;
    }

    supergate_library res;
    res.lib = &lib_;
    res.params = ps_;
    for ( auto& [key, entries] : retained_ )
    {
      (void)key;
      for ( auto& e : entries )
        res.gates.push_back( std::move( pool_[e] ) );
    }
    for ( auto& sg : res.gates )
      sg.name = supergate_expression( sg, lib_ );
    std::sort( res.gates.begin(), res.gates.end(), []( auto const& a, auto const& b ) {
      if ( a.num_vars != b.num_vars )
        return a.num_vars < b.num_vars;
      if ( a.function != b.function )
        return a.function < b.function;
      return better( a, b );
    } );
    for ( uint32_t i = 0; i < res.gates.size(); ++i )
    {
      res.gates[i].id = i;
      res.table[{ res.gates[i].function, res.gates[i].num_vars }].push_back( i );
      if ( res.gates[i].num_vars == 1u && res.gates[i].gates.size() == 1u && res.gates[i].root_cell() == lib_.inverter )
        res.inverter_gate = i;
    }
    stats_.retained = res.size();
    stats_.functions = static_cast<uint32_t>( res.table.size() );
    stats_.budget_exhausted = exhausted_;
    stats_.runtime = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    res.stats = stats_;
    return res;
  }

  /* (internal_dffs, depth, area, jj), then generation order */
  static bool better( supergate const& a, supergate const& b )
  {
    if ( a.internal_dffs != b.internal_dffs )
      return a.internal_dffs < b.internal_dffs;
    if ( a.depth != b.depth )
      return a.depth < b.depth;
    if ( a.area != b.area )
      return a.area < b.area;
    if ( a.jj_count != b.jj_count )
      return a.jj_count < b.jj_count;
    return a.id < b.id;
  }

private:
  void generate_level( uint32_t level )
  {
    /* children available to this level: bare variable plus everything retained so far */
    std::vector<sg_child> children{ { -1, 1u, 0u } };
    for ( auto const& [key, entries] : retained_ )
    {
      (void)key;
      for ( auto e : entries )
        children.push_back( { static_cast<int32_t>( e ), pool_[e].num_vars, pool_[e].depth } );
    }
    std::sort( children.begin(), children.end(), []( auto const& a, auto const& b ) { return a.index < b.index; } );

    for ( auto ci : lib_.gates )
    {
      auto const& c = lib_[ci];
      if ( c.num_inputs() == 1u )
      {
        for ( auto const& a : children )
        {
          if ( a.depth != level - 1u )
            continue;
          if ( c.kind == cell_kind::inverter && a.index >= 0 && lib_[pool_[a.index].root_cell()].kind == cell_kind::inverter )
            continue;
          std::array<uint8_t, max_tt_vars> map{};
          for ( uint32_t j = 0; j < a.num_vars; ++j )
            map[j] = static_cast<uint8_t>( j );
          consider( ci, a, nullptr, map, {}, a.num_vars );
          if ( exhausted_ )
            return;
        }
      }
      else if ( c.num_inputs() == 2u )
      {
        auto const f = c.function & 0xfu;
        bool const symmetric = ( ( f >> 1 ) & 1u ) == ( ( f >> 2 ) & 1u );
        for ( auto const& a : children )
        {
          for ( auto const& b : children )
          {
            if ( std::max( a.depth, b.depth ) != level - 1u )
              continue;
            auto const n = a.num_vars + b.num_vars;
            if ( n > ps_.max_vars )
              continue;
            if ( symmetric && a.index > b.index )
              continue;
            /* every subset of the variables with |S| = a.num_vars goes to a */
            for ( uint32_t s = 0; s < ( 1u << n ); ++s )
            {
              if ( static_cast<uint32_t>( __builtin_popcount( s ) ) != a.num_vars )
                continue;
              if ( symmetric && a.index == b.index && !( s & 1u ) )
                continue;
              std::array<uint8_t, max_tt_vars> ma{}, mb{};
              uint32_t ia = 0, ib = 0;
              for ( uint32_t v = 0; v < n; ++v )
              {
                if ( ( s >> v ) & 1u )
                  ma[ia++] = static_cast<uint8_t>( v );
                else
                  mb[ib++] = static_cast<uint8_t>( v );
              }
              consider( ci, a, &b, ma, mb, n );
              if ( exhausted_ )
                return;
            }
          }
        }
      }
    }
  }

  /* child value over the parent's variables */
  truth_table child_function( sg_child const& ch, std::array<uint8_t, max_tt_vars> const& map, uint32_t n ) const
  {
    if ( ch.index < 0 )
      return tt_var( map[0], n );
    auto const& sg = pool_[ch.index];
    std::array<truth_table, max_tt_vars> vars{};
    for ( uint32_t j = 0; j < sg.num_vars; ++j )
      vars[j] = tt_var( map[j], n );
    return evaluate_supergate( sg, lib_, std::span<truth_table const>( vars.data(), sg.num_vars ) ) & tt_mask( n );
  }

  void consider( uint32_t ci, sg_child const& a, sg_child const* b,
                 std::array<uint8_t, max_tt_vars> const& ma, std::array<uint8_t, max_tt_vars> const& mb, uint32_t n )
  {
    ++stats_.candidates;
    if ( ( stats_.candidates & 0xfffu ) == 0u )
    {
      auto const elapsed = std::chrono::duration<double>( std::chrono::steady_clock::now() - start_ ).count();
      if ( elapsed > ps_.time_budget )
      {
        exhausted_ = true;
        return;
      }
    }

    auto const& c = lib_[ci];
    auto const fa = child_function( a, ma, n );
    truth_table f;
    if ( b )
      f = tt_apply2( static_cast<uint32_t>( c.function ), fa, child_function( *b, mb, n ) ) & tt_mask( n );
    else
      f = tt_apply1( static_cast<uint32_t>( c.function ), fa ) & tt_mask( n );

    /* read-once trees over n variables must depend on all of them */
    for ( uint32_t v = 0; v < n; ++v )
      if ( !tt_depends_on( f, v, n ) )
        return;

    supergate cand;
    cand.num_vars = n;
    cand.function = f;
    auto child_metrics = [&]( sg_child const& ch, std::array<uint8_t, max_tt_vars> const& map, uint32_t& depth, uint32_t& dffs ) {
      if ( ch.index < 0 )
      {
        cand.pin_depth[map[0]] = 1u;
        depth = 0u;
        dffs = 0u;
        return;
      }
      auto const& sg = pool_[ch.index];
      for ( uint32_t j = 0; j < sg.num_vars; ++j )
        cand.pin_depth[map[j]] = static_cast<uint8_t>( sg.pin_depth[j] + 1u );
      cand.area += sg.area;
      cand.jj_count += sg.jj_count;
      depth = sg.depth;
      dffs = sg.internal_dffs;
    };
    uint32_t da, dfa, db = 0, dfb = 0;
    child_metrics( a, ma, da, dfa );
    if ( b )
      child_metrics( *b, mb, db, dfb );
    cand.area += c.area;
    cand.jj_count += c.jj_count;
    cand.depth = 1u + std::max( da, db );
    cand.internal_dffs = dfa + dfb + ( b ? ( da > db ? da - db : db - da ) : 0u );
    cand.id = static_cast<uint32_t>( stats_.candidates );

    auto& entries = retained_[{ f, n }];
    auto full = materialize( std::move( cand ), ci, a, b, ma, mb );
    /* same gate-tree shape over the same variables: keep the better one */
    auto const shape = shape_signature( full, static_cast<int32_t>( full.gates.size() - 1u ) );
    for ( auto& e : entries )
    {
      auto& old = pool_[e];
      if ( shape_signature( old, static_cast<int32_t>( old.gates.size() - 1u ) ) == shape )
      {
        if ( better( full, old ) )
          old = std::move( full );
        return;
      }
    }
    if ( entries.size() < 1u + ps_.runners_up )
    {
      if ( pool_size() >= ps_.max_count )
      {
        exhausted_ = true;
        return;
      }
      pool_.push_back( std::move( full ) );
      entries.push_back( static_cast<uint32_t>( pool_.size() - 1u ) );
      ++live_;
      return;
    }
    auto worst = std::max_element( entries.begin(), entries.end(), [&]( auto x, auto y ) { return better( pool_[x], pool_[y] ); } );
    if ( better( full, pool_[*worst] ) )
      pool_[*worst] = std::move( full );
  }

  /* grouping of variables by the gate tree, gate types ignored */
  static std::string shape_signature( supergate const& sg, int32_t g )
  {
    auto ref = [&]( int8_t r ) { return sg_is_var( r ) ? std::string( 1, static_cast<char>( 'a' + sg_var_of( r ) ) ) : shape_signature( sg, r ); };
    auto const& gt = sg.gates[g];
    if ( gt.num_fanins == 1u )
      return "(" + ref( gt.fanin[0] ) + ")";
    auto x = ref( gt.fanin[0] ), y = ref( gt.fanin[1] );
    if ( y < x )
      std::swap( x, y );
    return "(" + x + y + ")";
  }

  uint32_t pool_size() const { return live_; }

  supergate materialize( supergate cand, uint32_t ci, sg_child const& a, sg_child const* b,
                         std::array<uint8_t, max_tt_vars> const& ma, std::array<uint8_t, max_tt_vars> const& mb ) const
  {
    auto append = [&]( sg_child const& ch, std::array<uint8_t, max_tt_vars> const& map ) -> int8_t {
      if ( ch.index < 0 )
        return sg_var_ref( map[0] );
      auto const offset = static_cast<int8_t>( cand.gates.size() );
      for ( auto g : pool_[ch.index].gates )
      {
        for ( uint32_t j = 0; j < g.num_fanins; ++j )
          g.fanin[j] = sg_is_var( g.fanin[j] ) ? sg_var_ref( map[sg_var_of( g.fanin[j] )] ) : static_cast<int8_t>( g.fanin[j] + offset );
        cand.gates.push_back( g );
      }
      return static_cast<int8_t>( cand.gates.size() - 1u );
    };
    sg_gate root;
    root.cell = ci;
    root.num_fanins = b ? 2u : 1u;
    root.fanin[0] = append( a, ma );
    if ( b )
      root.fanin[1] = append( *b, mb );
    cand.gates.push_back( root );
    return cand;
  }

  cell_library const& lib_;
  supergate_params ps_;
  supergate_stats stats_;
  std::vector<supergate> pool_;
  std::unordered_map<function_key, std::vector<uint32_t>, function_key_hash> retained_;
  uint32_t live_{ 0 };
  bool exhausted_{ false };
  std::chrono::steady_clock::time_point start_;
};

} // namespace detail

/*! \brief Composes library gates breadth-first by clocked depth into
 * read-once supergates and indexes them by function. */
inline supergate_library generate_supergates( cell_library const& lib, supergate_params const& ps = {} )
{
  return detail::supergate_generator( lib, ps ).run();
}

/*! \brief Fraction of non-trivial cuts whose function has a supergate. */
inline double hit_rate( network_cuts const& cuts, supergate_library const& sgl )
{
  uint64_t total = 0, hits = 0;
  for ( auto const& set : cuts.sets )
  {
    for ( auto const& c : set.cuts )
    {
      if ( c.is_trivial_of( set.root ) )
        continue;
      ++total;
      if ( !sgl.lookup( c.function, c.size() ).empty() )
        ++hits;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>( hits ) / static_cast<double>( total );
}

inline nlohmann::json supergates_to_json( supergate_library const& sgl )
{
  nlohmann::json j;
  j["num_supergates"] = sgl.size();
  j["num_functions"] = sgl.table.size();
  j["max_vars"] = sgl.params.max_vars;
  j["max_depth"] = sgl.params.max_depth;
  j["budget_exhausted"] = sgl.stats.budget_exhausted;
  auto& arr = j["supergates"] = nlohmann::json::array();
  for ( auto const& sg : sgl.gates )
  {
    std::vector<uint32_t> pd( sg.pin_depth.begin(), sg.pin_depth.begin() + sg.num_vars );
    arr.push_back( { { "id", sg.id },
                     { "expr", sg.name },
                     { "num_vars", sg.num_vars },
                     { "function", tt_to_hex( sg.function, sg.num_vars ) },
                     { "area", sg.area },
                     { "jj", sg.jj_count },
                     { "depth", sg.depth },
                     { "pin_depth", pd },
                     { "internal_dffs", sg.internal_dffs } } );
  }
  return j;
}

} // namespace pbmap
