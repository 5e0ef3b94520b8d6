#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace pbmap
{

/*! \brief Binary tree of 2-input gates. Child index -1 is an input pin. */
struct binary_tree
{
  struct node
  {
    int32_t left{ -1 };
    int32_t right{ -1 };
  };

  std::vector<node> nodes;
  int32_t root{ -1 };

  uint32_t num_nodes() const { return static_cast<uint32_t>( nodes.size() ); }

  uint32_t num_pins() const
  {
    uint32_t n = 0;
    for ( auto const& nd : nodes )
      n += ( nd.left < 0 ) + ( nd.right < 0 );
    return n;
  }
};

/*! \brief Level profile of a tree; y[x] counts buffer nodes at level x
 * (root is level 1, y[0] and y[1] are always 0). */
struct tree_profile
{
  uint32_t height{ 0 };
  std::vector<uint64_t> y;
  uint64_t pins{ 0 };
  uint64_t nodes{ 0 };
  uint64_t buffers{ 0 };
};

namespace detail
{

inline uint32_t subtree_height( binary_tree const& t, int32_t n, std::vector<uint32_t>& h )
{
  /* children have smaller indices than parents is not assumed, so recurse iteratively */
  std::vector<std::pair<int32_t, bool>> stack{ { n, false } };
  while ( !stack.empty() )
  {
    auto [v, done] = stack.back();
    stack.pop_back();
    auto const& nd = t.nodes[v];
    if ( done )
    {
      auto const hl = nd.left < 0 ? 0u : h[nd.left];
      auto const hr = nd.right < 0 ? 0u : h[nd.right];
      h[v] = 1u + std::max( hl, hr );
      continue;
    }
    stack.push_back( { v, true } );
    if ( nd.left >= 0 )
      stack.push_back( { nd.left, false } );
    if ( nd.right >= 0 )
      stack.push_back( { nd.right, false } );
  }
  return h[n];
}

} // namespace detail

/*! \brief Measures the buffer profile with every gate firing as early as
 * possible, so buffers sit on the output side of short subtrees. */
inline tree_profile measure_profile( binary_tree const& t )
{
  if ( t.root < 0 )
    throw config_error( "empty tree" );
  std::vector<uint32_t> h( t.nodes.size(), 0u );
  auto const H = detail::subtree_height( t, t.root, h );

  tree_profile p;
  p.height = H;
  p.y.assign( H + 1u, 0u );
  p.nodes = t.num_nodes();
  p.pins = t.num_pins();

  /* a node of height k sits at level H - k + 1, input pins below level H */
  auto level_of = [&]( int32_t c ) { return c < 0 ? H + 1u : H - h[c] + 1u; };
  for ( uint32_t v = 0; v < t.nodes.size(); ++v )
  {
    auto const lv = level_of( static_cast<int32_t>( v ) );
    for ( auto c : { t.nodes[v].left, t.nodes[v].right } )
      for ( auto x = lv + 1u; x < level_of( c ); ++x )
        ++p.y[x];
  }
  for ( auto v : p.y )
    p.buffers += v;
  return p;
}

/*! \brief Input pins implied by a buffer profile: 2^H - sum of y_x 2^(H-x). */
inline uint64_t input_pins_from_profile( uint32_t height, std::vector<uint64_t> const& y )
{
  if ( height < 1u || height > 62u )
    throw config_error( "height must be in [1, 62]" );
  int64_t n = int64_t( 1 ) << height;
  for ( uint32_t x = 2; x < y.size() && x <= height; ++x )
    n -= static_cast<int64_t>( y[x] ) << ( height - x );
  if ( n <= 0 )
    throw config_error( "inconsistent profile" );
  return static_cast<uint64_t>( n );
}

/*! \brief Whether y is realizable by a tree of this height: at least one gate
 * at every level. Returns the pin count through the slot recursion, 0 if not. */
inline uint64_t profile_pins_if_valid( uint32_t height, std::vector<uint64_t> const& y )
{
  uint64_t slots = 1;
  for ( uint32_t x = 1; x <= height; ++x )
  {
    auto const yx = x < y.size() ? y[x] : 0u;
    if ( x == 1u && yx != 0u )
      return 0u;
    if ( yx >= slots )
      return 0u;
    slots = 2u * slots - yx;
  }
  return slots;
}

/*! \brief Uniformly random split binary tree with the given number of gates. */
template<class Rng>
binary_tree random_tree( uint32_t num_nodes, Rng& rng )
{
  if ( num_nodes < 1u )
    throw config_error( "tree needs at least one node" );
  binary_tree t;
  t.nodes.resize( num_nodes );
  uint32_t next = 0;
  /* (node slot, nodes in subtree) */
  std::vector<std::pair<int32_t, uint32_t>> work{ { static_cast<int32_t>( next++ ), num_nodes } };
  t.root = 0;
  while ( !work.empty() )
  {
    auto [v, size] = work.back();
    work.pop_back();
    auto const left = std::uniform_int_distribution<uint32_t>( 0u, size - 1u )( rng );
    auto const right = size - 1u - left;
    if ( left )
    {
      t.nodes[v].left = static_cast<int32_t>( next++ );
      work.push_back( { t.nodes[v].left, left } );
    }
    if ( right )
    {
      t.nodes[v].right = static_cast<int32_t>( next++ );
      work.push_back( { t.nodes[v].right, right } );
    }
  }
  return t;
}

/*! \brief All tree shapes with exactly n gates (Catalan many). */
inline std::vector<binary_tree> all_trees( uint32_t n )
{
  if ( n == 0u )
    return { binary_tree{} };
  std::vector<binary_tree> res;
  for ( uint32_t l = 0; l < n; ++l )
  {
    auto const ls = all_trees( l );
    auto const rs = all_trees( n - 1u - l );
    for ( auto const& a : ls )
      for ( auto const& b : rs )
      {
        binary_tree t;
        t.nodes.push_back( {} );
        t.root = 0;
        auto append = [&]( binary_tree const& s ) -> int32_t {
          if ( s.root < 0 )
            return -1;
          auto const off = static_cast<int32_t>( t.nodes.size() );
          for ( auto nd : s.nodes )
          {
            if ( nd.left >= 0 )
              nd.left += off;
            if ( nd.right >= 0 )
              nd.right += off;
            t.nodes.push_back( nd );
          }
          return s.root + off;
        };
        t.nodes[0].left = append( a );
        t.nodes[0].right = append( b );
        res.push_back( std::move( t ) );
      }
  }
  return res;
}

/*! \brief Chain of the given length: every gate has one input pin and the
 * next gate, the last one two pins. Returns the tree and the spine ids. */
inline binary_tree chain_tree( uint32_t length )
{
  binary_tree t;
  t.nodes.resize( length );
  t.root = length ? 0 : -1;
  for ( uint32_t i = 0; i + 1u < length; ++i )
    t.nodes[i].left = static_cast<int32_t>( i + 1u );
  return t;
}

/*! \brief Tree of height X with the most buffer nodes: a chain for X <= 3,
 * two chains of length X - 1 under the root for larger X. */
inline binary_tree most_unbalanced_tree( uint32_t X )
{
  if ( X < 1u )
    throw config_error( "height must be at least 1" );
  if ( X <= 3u )
    return chain_tree( X );
  binary_tree t;
  t.nodes.resize( 2u * X - 1u );
  t.root = 0;
  t.nodes[0].left = 1;
  t.nodes[0].right = static_cast<int32_t>( X );
  for ( uint32_t i = 1; i + 1u < X; ++i )
  {
    t.nodes[i].left = static_cast<int32_t>( i + 1u );
    t.nodes[X - 1u + i].left = static_cast<int32_t>( X + i );
  }
  return t;
}

inline tree_profile most_unbalanced( uint32_t X )
{
  return measure_profile( most_unbalanced_tree( X ) );
}

/*! \brief Closed forms for the buffer count of the most unbalanced tree. */
inline uint64_t most_unbalanced_buffers_formula( uint32_t X )
{
  if ( X < 1u )
    throw config_error( "height must be at least 1" );
  uint64_t const x = X;
  return X <= 3u ? ( x - 1u ) * x / 2u : ( x - 2u ) * ( x - 1u );
}

inline uint64_t most_unbalanced_nodes_formula( uint32_t X )
{
  return X <= 3u ? X : 2u * X - 1u;
}

/*! \brief Fewest buffers for height X and n input pins: buffers are placed
 * as close to the root as the pin count allows. */
inline tree_profile most_balanced( uint32_t X, uint64_t n )
{
  if ( X < 1u || X > 62u )
    throw config_error( "height must be in [1, 62]" );
  if ( n < X + 1u || n > ( uint64_t( 1 ) << X ) )
    throw config_error( "no tree of height " + std::to_string( X ) + " with " + std::to_string( n ) + " pins" );
  tree_profile p;
  p.height = X;
  p.y.assign( X + 1u, 0u );
  uint64_t rest = ( uint64_t( 1 ) << X ) - n;
  uint64_t slots = 2;
  for ( uint32_t x = 2; x <= X; ++x )
  {
    auto const w = uint64_t( 1 ) << ( X - x );
    p.y[x] = std::min( slots - 1u, rest / w );
    rest -= p.y[x] * w;
    slots = 2u * slots - p.y[x];
  }
  if ( rest != 0u )
    throw internal_error( "greedy profile did not close" );
  p.pins = n;
  p.nodes = n - 1u;
  for ( auto v : p.y )
    p.buffers += v;
  return p;
}

/*! \brief Smallest buffer count over every valid profile with height X and
 * n pins, by enumeration. Small X only. */
inline uint64_t min_buffers_exhaustive( uint32_t X, uint64_t n )
{
  uint64_t best = UINT64_MAX;
  std::vector<uint64_t> y( X + 1u, 0u );
  auto rec = [&]( auto&& self, uint32_t x, uint64_t slots, uint64_t sum ) -> void {
    if ( x > X )
    {
      if ( slots == n )
        best = std::min( best, sum );
      return;
    }
    for ( uint64_t v = 0; v < slots; ++v )
    {
      y[x] = v;
      self( self, x + 1u, 2u * slots - v, sum + v );
    }
    y[x] = 0;
  };
  rec( rec, 2u, 2u, 0u );
  return best;
}

/*! \brief Buffer count stated for re-growing the tree of most_unbalanced_tree
 * to height X + p with the same 2X pins. */
inline int64_t lemma6_buffers( uint32_t X, uint32_t p )
{
  if ( X < 2u || p < 1u || p > X - 1u )
    throw config_error( "lemma6_buffers needs 1 <= p <= X - 1" );
  int64_t const x = X, q = p;
  return ( x - q - 1 ) * ( x - q - 2 ) / 2 + 2 * q * x + q - 2 * q * q;
}

/*! \brief A chain of X + p gates, the bottom X - p - 1 chain gates getting a
 * two-pin gate as second child and the remaining ones a pin. */
inline binary_tree lemma6_tree( uint32_t X, uint32_t p )
{
  if ( X < 2u || p < 1u || p > X - 1u )
    throw config_error( "lemma6_tree needs 1 <= p <= X - 1" );
  auto const H = X + p;
  auto const extra = X - p - 1u;
  auto t = chain_tree( H );
  for ( uint32_t j = 1; j <= extra; ++j )
  {
    t.nodes[H - 1u - j].right = static_cast<int32_t>( t.nodes.size() );
    t.nodes.push_back( {} );
  }
  return t;
}

/*! \brief Buffer count of lemma6_tree in closed form. */
inline int64_t lemma6_construction_buffers( uint32_t X, uint32_t p )
{
  int64_t const x = X, q = p;
  return ( x - q - 1 ) * ( x - q - 2 ) / 2 + 2 * q * x - q;
}

struct theorem1_result
{
  /*! \brief Twice the stated buffer difference, kept integral. */
  int64_t y_diff_times2;
  /*! \brief Twice the difference computed from the two tree counts. */
  int64_t direct_times2;
  bool holds;
};

/*! \brief Checks that the stated buffer difference never falls strictly
 * between 1 and p. */
inline theorem1_result theorem1_check( uint32_t X, uint32_t p )
{
  if ( X < 4u || p < 1u || p > X - 1u )
    throw config_error( "theorem1_check needs X >= 4 and 1 <= p <= X - 1" );
  int64_t const x = X, q = p;
  theorem1_result r;
  r.y_diff_times2 = -x * x + 4 * ( q + 1 ) * x - 2 * q - 3 * q * q - 3;
  r.direct_times2 = 2 * ( lemma6_buffers( X, p ) - static_cast<int64_t>( most_unbalanced_buffers_formula( X ) ) );
  r.holds = !( 2 < r.y_diff_times2 && r.y_diff_times2 < 2 * q );
  return r;
}

struct lemma7_result
{
  uint64_t eq7;
  uint64_t eq8;
  bool equal;
};

/*! \brief DFF counts of a subtree at level X of a height-H tree before and
 * after pushing its registers to the inputs, by explicit summation. */
inline lemma7_result lemma7_check( uint32_t H, uint32_t X )
{
  if ( X < 1u || X >= H || H > 62u )
    throw config_error( "lemma7_check needs 1 <= X < H <= 62" );
  lemma7_result r{ 0u, 0u, false };
  for ( uint32_t i = 0; i + 1u <= H - X; ++i )
    r.eq7 += uint64_t( 1 ) << i;
  r.eq7 *= 2u;
  for ( uint32_t i = 1; i <= H - X; ++i )
    r.eq8 += uint64_t( 1 ) << i;
  auto const closed = ( uint64_t( 1 ) << ( H - X + 1u ) ) - 2u;
  r.equal = r.eq7 == r.eq8 && r.eq8 == closed;
  return r;
}

struct lemma_check
{
  explicit lemma_check( std::string n ) : name( std::move( n ) ) {}

  std::string name;
  bool passed{ true };
  uint64_t cases{ 0 };
  uint64_t failures{ 0 };
  /*! \brief First failing case, empty when all pass. */
  std::string first_failure;
};

namespace detail
{

inline void record( lemma_check& c, bool ok, std::string const& what )
{
  ++c.cases;
  if ( ok )
    return;
  ++c.failures;
  c.passed = false;
  if ( c.first_failure.empty() )
    c.first_failure = what;
}

} // namespace detail

/*! \brief Machine-checks the tree identities: pin count from the profile
 * and n = N + 1 on random trees, the most-unbalanced closed forms, minimality
 * of the greedy profile, the re-grown tree count, the buffer difference sweep
 * and the register push identity. */
inline std::vector<lemma_check> run_lemma_suite( uint64_t seed = 1u, uint32_t random_trees = 1000u )
{
  std::vector<lemma_check> out;
  std::mt19937_64 rng( seed );

  lemma_check pins{ "pin_count_from_profile" }, nodes{ "pins_equal_nodes_plus_one" };
  for ( uint32_t i = 0; i < random_trees; ++i )
  {
    auto const n = std::uniform_int_distribution<uint32_t>( 1u, 60u )( rng );
    auto const t = random_tree( n, rng );
    auto const prof = measure_profile( t );
    auto const what = "random tree " + std::to_string( i ) + " with " + std::to_string( n ) + " nodes";
    detail::record( pins, input_pins_from_profile( prof.height, prof.y ) == t.num_pins(), what );
    detail::record( nodes, t.num_pins() == t.num_nodes() + 1u, what );
  }
  out.push_back( pins );
  out.push_back( nodes );

  lemma_check unbal{ "most_unbalanced_closed_forms" };
  for ( uint32_t X = 1; X <= 10u; ++X )
  {
    auto const prof = measure_profile( most_unbalanced_tree( X ) );
    detail::record( unbal, prof.buffers == most_unbalanced_buffers_formula( X ) && prof.nodes == most_unbalanced_nodes_formula( X ),
                    "X=" + std::to_string( X ) );
  }
  out.push_back( unbal );

  lemma_check bal{ "most_balanced_minimal" };
  for ( uint32_t X = 1; X <= 6u; ++X )
    for ( uint64_t n = X + 1u; n <= ( uint64_t( 1 ) << X ); ++n )
      detail::record( bal, most_balanced( X, n ).buffers == min_buffers_exhaustive( X, n ),
                      "X=" + std::to_string( X ) + " n=" + std::to_string( n ) );
  out.push_back( bal );

  lemma_check regrow{ "regrown_tree_formula" };
  for ( uint32_t X = 2; X <= 8u; ++X )
    for ( uint32_t p = 1; p <= X - 1u; ++p )
    {
      auto const built = static_cast<int64_t>( measure_profile( lemma6_tree( X, p ) ).buffers );
      auto const stated = lemma6_buffers( X, p );
      detail::record( regrow, built == stated,
                      "X=" + std::to_string( X ) + " p=" + std::to_string( p ) + ": formula " + std::to_string( stated ) + ", construction " + std::to_string( built ) );
    }
  out.push_back( regrow );

  lemma_check diff{ "buffer_difference_sweep" };
  for ( uint32_t X = 4; X <= 200u; ++X )
    for ( uint32_t p = 1; p <= X - 1u; ++p )
    {
      auto const r = theorem1_check( X, p );
      detail::record( diff, r.holds,
                      "X=" + std::to_string( X ) + " p=" + std::to_string( p ) + ": difference " + std::to_string( r.y_diff_times2 ) + "/2" );
    }
  out.push_back( diff );

  lemma_check push{ "register_push_identity" };
  for ( uint32_t H = 2; H <= 20u; ++H )
    for ( uint32_t X = 1; X < H; ++X )
      detail::record( push, lemma7_check( H, X ).equal, "H=" + std::to_string( H ) + " X=" + std::to_string( X ) );
  out.push_back( push );
  return out;
}

} // namespace pbmap
