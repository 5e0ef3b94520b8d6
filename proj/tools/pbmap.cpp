/* pbmap command line driver: map, analyze-tree, check-lemmas, hit-rate */

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <pbmap/pbmap.hpp>

namespace fs = std::filesystem;
using namespace pbmap;

namespace
{

enum exit_code : int
{
  exit_ok = 0,
  exit_check_failed = 1,
  exit_usage = 2,
  exit_parse = 3,
  exit_library = 4,
  exit_internal = 5,
  exit_io = 6
};

int exit_code_for( error_stage s )
{
  switch ( s )
  {
  case error_stage::config:
    return exit_usage;
  case error_stage::parse:
    return exit_parse;
  case error_stage::library:
    return exit_library;
  case error_stage::io:
    return exit_io;
  case error_stage::mapping:
  case error_stage::internal:
    return exit_internal;
  }
  return exit_internal;
}

struct run_config
{
  std::vector<std::string> inputs;
  std::string library;
  uint32_t cut_size{ 5u };
  uint32_t supergate_depth{ 3u };
  uint32_t cut_cap{ 250u };
  uint32_t frontier_cap{ 8u };
  std::string objective{ "dffs+depth+area" };
  bool no_retime{ false };
  std::string output;
  std::string out_dir;
  std::string report;
  std::string format{ "text" };
  std::string csv;
  std::string dump_dir;
  bool json{ false };
  bool deterministic{ false };
  bool greedy{ false };
};

mapping_objective parse_objective( std::string const& s )
{
  if ( s == "dffs" )
    return mapping_objective::dffs;
  if ( s == "dffs+depth" )
    return mapping_objective::dffs_depth;
  if ( s == "dffs+depth+area" )
    return mapping_objective::dffs_depth_area;
  throw config_error( "unknown objective '" + s + "'" );
}

void write_file( fs::path const& p, std::string const& text )
{
  if ( p.has_parent_path() )
  {
    std::error_code ec;
    fs::create_directories( p.parent_path(), ec );
  }
  std::ofstream out( p, std::ios::binary );
  if ( !out )
    throw error( error_stage::io, "cannot write '" + p.string() + "'" );
  out << text;
  if ( !out )
    throw error( error_stage::io, "write failed for '" + p.string() + "'" );
}

/* expands directories to their netlist files in name order */
std::vector<std::string> collect_inputs( std::vector<std::string> const& paths, bool& batch )
{
  std::vector<std::string> files;
  batch = paths.size() > 1u;
  for ( auto const& p : paths )
  {
    if ( fs::is_directory( p ) )
    {
      batch = true;
      std::vector<std::string> found;
      for ( auto const& e : fs::directory_iterator( p ) )
      {
        auto const ext = e.path().extension().string();
        if ( e.is_regular_file() && ( ext == ".blif" || ext == ".aag" ) )
          found.push_back( e.path().string() );
      }
      std::sort( found.begin(), found.end() );
      files.insert( files.end(), found.begin(), found.end() );
    }
    else if ( fs::exists( p ) )
      files.push_back( p );
    else
      throw error( error_stage::io, "input '" + p + "' does not exist" );
  }
  if ( files.empty() )
    throw error( error_stage::io, "no netlist files found" );
  return files;
}

cell_library load_library( std::string const& path )
{
  if ( path.empty() )
    return bundled_library();
  return parse_library( read_text_file( path ) );
}

uint32_t thread_count( size_t jobs )
{
  uint32_t n = std::max( 1u, std::thread::hardware_concurrency() );
  if ( auto const* env = std::getenv( "PBMAP_THREADS" ) )
  {
    char* end = nullptr;
    auto const v = std::strtoul( env, &end, 10 );
    if ( end == env || *end != '\0' || v == 0u )
      throw config_error( "PBMAP_THREADS must be a positive integer" );
    n = static_cast<uint32_t>( v );
  }
  return static_cast<uint32_t>( std::min<size_t>( n, jobs ) );
}

struct circuit_result
{
  std::optional<mapping_report> report;
  std::string netlist;
  std::string error_message;
  int code{ exit_ok };
};

circuit_result map_one( std::string const& path, cell_library const& lib, supergate_library const& sgl, run_config const& cfg, flow_params const& fp )
{
  circuit_result res;
  try
  {
    auto g = read_netlist_file( path, &lib );
    auto const fr = run_flow( g, sgl, fp );
    auto rep = build_report( fr.balanced, fr.final_network, fr.hit_rate, cfg.deterministic ? 0.0 : fr.runtime );
    rep.circuit = g.name;
    res.report = rep;

    auto const stem = fs::path( path ).stem().string();
    bool const verilog = !cfg.output.empty() && fs::path( cfg.output ).extension() == ".v";
    res.netlist = verilog ? write_mapped_verilog( fr.final_network ) : write_mapped_blif( fr.final_network );
    if ( !cfg.dump_dir.empty() )
    {
      auto cps = fp.cuts;
      cps.stop_at_multi_fanout = fp.map.dag;
      auto cuts = enumerate_cuts( g, cps );
      compute_cut_functions( g, cuts );
      write_file( fs::path( cfg.dump_dir ) / ( stem + ".cuts.txt" ), dump_cuts( cuts ) );
      write_file( fs::path( cfg.dump_dir ) / ( stem + ".balanced.blif" ), write_mapped_blif( fr.balanced ) );
    }
  }
  catch ( pbmap::error const& e )
  {
    res.code = exit_code_for( e.stage() );
    res.error_message = std::string( stage_name( e.stage() ) ) + " error in " + path + ": " + e.what();
  }
  catch ( std::exception const& e )
  {
    res.code = exit_internal;
    res.error_message = "internal error in " + path + ": " + e.what();
  }
  return res;
}

int run_map( run_config const& cfg )
{
  bool batch = false;
  auto const files = collect_inputs( cfg.inputs, batch );
  auto const fmt = report_format_from_string( cfg.format );
  if ( batch && !cfg.output.empty() )
    throw config_error( "--output names one netlist; use --out-dir for several inputs" );

  flow_params fp;
  fp.cuts.cut_size = cfg.cut_size;
  fp.cuts.cut_limit = cfg.cut_cap;
  fp.map.frontier_cap = cfg.frontier_cap;
  fp.objective = parse_objective( cfg.objective );
  fp.retime = !cfg.no_retime;
  fp.depth_greedy = cfg.greedy;

  auto const lib = load_library( cfg.library );
  supergate_params sp;
  sp.max_vars = cfg.cut_size;
  sp.max_depth = cfg.supergate_depth;
  auto const sgl = generate_supergates( lib, sp );

  std::vector<circuit_result> results( files.size() );
  std::atomic<size_t> next{ 0 };
  auto worker = [&]() {
    for ( size_t i = next++; i < files.size(); i = next++ )
      results[i] = map_one( files[i], lib, sgl, cfg, fp );
  };
  std::vector<std::thread> pool;
  auto const n = thread_count( files.size() );
  for ( uint32_t t = 1; t < n; ++t )
    pool.emplace_back( worker );
  worker();
  for ( auto& t : pool )
    t.join();

  int code = exit_ok;
  std::vector<mapping_report> reports;
  for ( size_t i = 0; i < files.size(); ++i )
  {
    auto const& r = results[i];
    if ( r.code != exit_ok )
    {
      std::cerr << "pbmap: " << r.error_message << "\n";
      if ( code == exit_ok )
        code = r.code;
      continue;
    }
    reports.push_back( *r.report );
    auto const stem = fs::path( files[i] ).stem().string();
    if ( !cfg.out_dir.empty() )
    {
      write_file( fs::path( cfg.out_dir ) / ( stem + ".mapped.blif" ), r.netlist );
      write_file( fs::path( cfg.out_dir ) / ( stem + ".report.json" ), emit_report( *r.report, report_format::json ) );
    }
    else if ( !cfg.output.empty() )
      write_file( cfg.output, r.netlist );
  }

  if ( !cfg.csv.empty() )
    write_file( cfg.csv, reports_to_csv( reports ) );
  else if ( batch && !cfg.out_dir.empty() )
    write_file( fs::path( cfg.out_dir ) / "summary.csv", reports_to_csv( reports ) );

  auto const text = emit_reports( reports, cfg.json ? report_format::json : fmt );
  if ( !cfg.report.empty() )
    write_file( cfg.report, text );
  else
    std::cout << text;
  return code;
}

int run_analyze_tree( uint32_t height, uint64_t pins, bool json )
{
  auto const prof = most_balanced( height, pins );
  auto const unbalanced = height >= 1u ? most_unbalanced_buffers_formula( height ) : 0u;
  if ( json )
  {
    nlohmann::ordered_json j;
    j["height"] = prof.height;
    j["pins"] = prof.pins;
    j["nodes"] = prof.nodes;
    j["buffers"] = prof.buffers;
    nlohmann::ordered_json y = nlohmann::ordered_json::object();
    for ( uint32_t x = 2; x <= height; ++x )
      y[std::to_string( x )] = prof.y[x];
    j["y"] = y;
    j["most_unbalanced_buffers"] = unbalanced;
    /* identities checked on this (height, pins) pair */
    auto checks = nlohmann::ordered_json::array();
    auto add = [&]( char const* name, bool ok ) { checks.push_back( { { "name", name }, { "passed", ok } } ); };
    add( "pin_count_from_profile", input_pins_from_profile( height, prof.y ) == pins );
    add( "profile_realizable", profile_pins_if_valid( height, prof.y ) == pins );
    if ( height <= 6u )
      add( "most_balanced_minimal", prof.buffers == min_buffers_exhaustive( height, pins ) );
    if ( height <= 40u )
    {
      auto const mu = most_unbalanced( height );
      add( "most_unbalanced_closed_forms", mu.buffers == unbalanced && mu.nodes == most_unbalanced_nodes_formula( height ) );
    }
    j["checks"] = checks;
    std::cout << j.dump( 2 ) << "\n";
    return exit_ok;
  }
  std::cout << "height " << prof.height << ", pins " << prof.pins << ", gates " << prof.nodes << "\n";
  for ( uint32_t x = 2; x <= height; ++x )
    std::cout << "  y" << x << " = " << prof.y[x] << "\n";
  std::cout << "fewest buffers: " << prof.buffers << "\n";
  std::cout << "most unbalanced tree of this height: " << unbalanced << " buffers\n";
  return exit_ok;
}

int run_check_lemmas( uint64_t seed, bool json )
{
  auto const checks = run_lemma_suite( seed );
  bool all = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for ( auto const& c : checks )
  {
    all &= c.passed;
    if ( json )
      arr.push_back( { { "name", c.name }, { "passed", c.passed }, { "cases", c.cases }, { "failures", c.failures }, { "first_failure", c.first_failure } } );
    else
    {
      std::cout << ( c.passed ? "PASS " : "FAIL " ) << c.name << " (" << c.cases << " cases";
      if ( !c.passed )
        std::cout << ", " << c.failures << " failing, first: " << c.first_failure;
      std::cout << ")\n";
    }
  }
  if ( json )
    std::cout << arr.dump( 2 ) << "\n";
  return all ? exit_ok : exit_check_failed;
}

int run_hit_rate( run_config const& cfg )
{
  bool batch = false;
  auto const files = collect_inputs( cfg.inputs, batch );
  auto const lib = load_library( cfg.library );
  supergate_params sp;
  sp.max_vars = cfg.cut_size;
  sp.max_depth = cfg.supergate_depth;
  auto const sgl = generate_supergates( lib, sp );
  cut_params cp;
  cp.cut_size = cfg.cut_size;
  cp.cut_limit = cfg.cut_cap;

  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for ( auto const& f : files )
  {
    auto g = read_netlist_file( f, &lib );
    auto cuts = enumerate_cuts( g, cp );
    compute_cut_functions( g, cuts );
    auto const hr = hit_rate( cuts, sgl );
    if ( cfg.json )
      arr.push_back( { { "circuit", g.name }, { "cuts", cuts.stats.total_cuts }, { "hit_rate", hr } } );
    else
      std::cout << g.name << " " << detail::fixed( hr, 4 ) << "\n";
  }
  if ( cfg.json )
    std::cout << arr.dump( 2 ) << "\n";
  return exit_ok;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "pbmap: path-balancing technology mapping for SFQ circuits" };
  app.require_subcommand( 1 );
  run_config cfg;

  auto add_mapping_knobs = [&]( CLI::App* sub ) {
    sub->add_option( "inputs", cfg.inputs, "BLIF or ASCII AIGER files, or directories" )->required();
    sub->add_option( "--lib", cfg.library, "genlib library (default: bundled)" );
    sub->add_option( "-k,--cut-size", cfg.cut_size, "cut size" )->check( CLI::Range( 2u, 6u ) )->capture_default_str();
    sub->add_option( "--supergate-depth", cfg.supergate_depth, "supergate depth in gates" )->check( CLI::Range( 2u, 4u ) )->capture_default_str();
    sub->add_option( "--cut-cap", cfg.cut_cap, "cuts kept per node" )->check( CLI::Range( 2u, 100000u ) )->capture_default_str();
    sub->add_flag( "--json", cfg.json, "machine-readable output" );
  };

  auto* map = app.add_subcommand( "map", "map circuits and report metrics" );
  add_mapping_knobs( map );
  map->add_option( "--frontier-cap", cfg.frontier_cap, "cost-curve corners kept per node" )->check( CLI::Range( 1u, 1024u ) )->capture_default_str();
  map->add_option( "--objective", cfg.objective, "dffs | dffs+depth | dffs+depth+area" )->check( CLI::IsMember( { "dffs", "dffs+depth", "dffs+depth+area" } ) )->capture_default_str();
  map->add_flag( "--no-retime", cfg.no_retime, "skip register minimization" );
  map->add_flag( "--depth-greedy", cfg.greedy, "use the minimum-depth reference mapper" );
  map->add_option( "-o,--output", cfg.output, "mapped netlist (.blif or .v) for a single input" );
  map->add_option( "--out-dir", cfg.out_dir, "per-circuit netlists and reports, plus summary.csv for batches" );
  map->add_option( "--report", cfg.report, "write the report here instead of standard output" );
  map->add_option( "--format", cfg.format, "report format: text | json | csv" )->check( CLI::IsMember( { "text", "json", "csv" } ) )->capture_default_str();
  map->add_option( "--csv", cfg.csv, "aggregate CSV path" );
  map->add_option( "--dump-dir", cfg.dump_dir, "write cut lists and pre-retiming netlists here" );
  map->add_flag( "--deterministic", cfg.deterministic, "report runtime as 0 so outputs are byte-identical" );

  uint32_t height = 0;
  uint64_t pins = 0;
  bool tree_json = false;
  auto* tree = app.add_subcommand( "analyze-tree", "fewest-buffer level profile for a tree height and pin count" );
  tree->add_option( "--height", height, "tree height" )->required()->check( CLI::Range( 1u, 62u ) );
  tree->add_option( "--pins", pins, "input pins" )->required();
  tree->add_flag( "--json", tree_json, "machine-readable output" );

  uint64_t seed = 1;
  bool lemmas_json = false;
  auto* lemmas = app.add_subcommand( "check-lemmas", "machine-check the tree buffer identities" );
  lemmas->add_option( "--seed", seed, "seed for the random trees" )->capture_default_str();
  lemmas->add_flag( "--json", lemmas_json, "machine-readable output" );

  auto* hr = app.add_subcommand( "hit-rate", "fraction of cuts with an implementing supergate" );
  add_mapping_knobs( hr );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const rc = app.exit( e );
    return rc == 0 ? exit_ok : exit_usage;
  }

  try
  {
    if ( *map )
      return run_map( cfg );
    if ( *tree )
      return run_analyze_tree( height, pins, tree_json );
    if ( *lemmas )
      return run_check_lemmas( seed, lemmas_json );
    if ( *hr )
      return run_hit_rate( cfg );
  }
  catch ( pbmap::error const& e )
  {
    std::cerr << "pbmap: " << stage_name( e.stage() ) << " error: " << e.what() << "\n";
    return exit_code_for( e.stage() );
  }
  catch ( std::exception const& e )
  {
    std::cerr << "pbmap: internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_usage;
}
