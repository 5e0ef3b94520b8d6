#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "mapped_network.hpp"

namespace pbmap
{

inline constexpr char const* report_schema = "pbmap.report/v1";

/*! \brief Metrics of one mapped circuit. */
struct mapping_report
{
  std::string circuit;
  /*! \brief DFFs of the balanced network before retiming. */
  uint32_t dffs_before{ 0 };
  uint32_t dffs_after{ 0 };
  /*! \brief Sum of instance areas: gates, DFFs and splitters. */
  double area{ 0.0 };
  uint64_t jj_total{ 0 };
  uint32_t logical_depth{ 0 };
  uint32_t splitters{ 0 };
  double hit_rate{ 0.0 };
  /*! \brief Seconds spent in mapping, balancing and retiming. */
  double runtime{ 0.0 };
  uint32_t po_pad_dffs{ 0 };
};

/*! \brief Report of a final network; dffs_before comes from the balanced
 * network before retiming. */
inline mapping_report build_report( mapped_network const& before, mapped_network const& after, double hit_rate = 0.0, double runtime = 0.0 )
{
  mapping_report r;
  r.circuit = after.name;
  r.dffs_before = before.num_dffs();
  r.dffs_after = after.num_dffs();
  r.area = after.area();
  r.jj_total = after.jj_count();
  r.logical_depth = after.depth();
  r.splitters = after.num_splitters();
  r.hit_rate = hit_rate;
  r.runtime = runtime;
  r.po_pad_dffs = after.po_pad_dffs;
  return r;
}

enum class report_format
{
  text,
  json,
  csv
};

inline report_format report_format_from_string( std::string const& s )
{
  if ( s == "text" )
    return report_format::text;
  if ( s == "json" )
    return report_format::json;
  if ( s == "csv" )
    return report_format::csv;
  throw config_error( "unsupported report format '" + s + "'" );
}

inline nlohmann::ordered_json report_to_json( mapping_report const& r )
{
  nlohmann::ordered_json j;
  j["schema"] = report_schema;
  j["circuit"] = r.circuit;
  j["dffs_before"] = r.dffs_before;
  j["dffs_after"] = r.dffs_after;
  j["area"] = r.area;
  j["jj_total"] = r.jj_total;
  j["logical_depth"] = r.logical_depth;
  j["splitters"] = r.splitters;
  j["hit_rate"] = r.hit_rate;
  j["runtime"] = r.runtime;
  j["po_pad_dffs"] = r.po_pad_dffs;
  return j;
}

inline mapping_report report_from_json( nlohmann::json const& j )
{
  if ( j.value( "schema", "" ) != report_schema )
    throw error( error_stage::parse, "unknown report schema" );
  mapping_report r;
  r.circuit = j.at( "circuit" ).get<std::string>();
  r.dffs_before = j.at( "dffs_before" ).get<uint32_t>();
  r.dffs_after = j.at( "dffs_after" ).get<uint32_t>();
  r.area = j.at( "area" ).get<double>();
  r.jj_total = j.at( "jj_total" ).get<uint64_t>();
  r.logical_depth = j.at( "logical_depth" ).get<uint32_t>();
  r.splitters = j.at( "splitters" ).get<uint32_t>();
  r.hit_rate = j.at( "hit_rate" ).get<double>();
  r.runtime = j.at( "runtime" ).get<double>();
  r.po_pad_dffs = j.at( "po_pad_dffs" ).get<uint32_t>();
  return r;
}

inline constexpr char const* csv_header = "circuit,dffs_before,dffs_after,area,jj,depth,runtime";

namespace detail
{

inline std::string fixed( double v, int digits )
{
  char buf[64];
  std::snprintf( buf, sizeof( buf ), "%.*f", digits, v );
  return buf;
}

/* averages of the numeric columns, circuit name "average" */
struct report_average
{
  double dffs_before{ 0 }, dffs_after{ 0 }, area{ 0 }, jj{ 0 }, depth{ 0 }, runtime{ 0 };
};

inline report_average average_of( std::vector<mapping_report> const& rs )
{
  report_average a;
  if ( rs.empty() )
    return a;
  for ( auto const& r : rs )
  {
    a.dffs_before += r.dffs_before;
    a.dffs_after += r.dffs_after;
    a.area += r.area;
    a.jj += static_cast<double>( r.jj_total );
    a.depth += r.logical_depth;
    a.runtime += r.runtime;
  }
  auto const n = static_cast<double>( rs.size() );
  a.dffs_before /= n;
  a.dffs_after /= n;
  a.area /= n;
  a.jj /= n;
  a.depth /= n;
  a.runtime /= n;
  return a;
}

inline std::string csv_field( std::string const& s )
{
  if ( s.find_first_of( ",\"\n" ) == std::string::npos )
    return s;
  std::string q = "\"";
  for ( char c : s )
  {
    if ( c == '"' )
      q += '"';
    q += c;
  }
  return q + "\"";
}

} // namespace detail

/*! \brief CSV with one row per report. An average row follows when there is
 * more than one report. */
inline std::string reports_to_csv( std::vector<mapping_report> const& rs )
{
  std::ostringstream os;
  os << csv_header << "\n";
  for ( auto const& r : rs )
    os << detail::csv_field( r.circuit ) << "," << r.dffs_before << "," << r.dffs_after << "," << detail::fixed( r.area, 4 ) << ","
       << r.jj_total << "," << r.logical_depth << "," << detail::fixed( r.runtime, 4 ) << "\n";
  if ( rs.size() > 1u )
  {
    auto const a = detail::average_of( rs );
    os << "average," << detail::fixed( a.dffs_before, 2 ) << "," << detail::fixed( a.dffs_after, 2 ) << "," << detail::fixed( a.area, 4 ) << ","
       << detail::fixed( a.jj, 2 ) << "," << detail::fixed( a.depth, 2 ) << "," << detail::fixed( a.runtime, 4 ) << "\n";
  }
  return os.str();
}

/*! \brief Human table in the column order circuit, DFFs before/after, area,
 * JJ, depth, runtime. */
inline std::string reports_to_text( std::vector<mapping_report> const& rs )
{
  std::vector<std::vector<std::string>> rows{ { "circuit", "#DFF before", "#DFF after", "area", "#JJ", "depth", "runtime (s)" } };
  for ( auto const& r : rs )
    rows.push_back( { r.circuit, std::to_string( r.dffs_before ), std::to_string( r.dffs_after ), detail::fixed( r.area, 4 ),
                      std::to_string( r.jj_total ), std::to_string( r.logical_depth ), detail::fixed( r.runtime, 4 ) } );
  if ( rs.size() > 1u )
  {
    auto const a = detail::average_of( rs );
    rows.push_back( { "average", detail::fixed( a.dffs_before, 2 ), detail::fixed( a.dffs_after, 2 ), detail::fixed( a.area, 4 ),
                      detail::fixed( a.jj, 2 ), detail::fixed( a.depth, 2 ), detail::fixed( a.runtime, 4 ) } );
  }
  std::vector<size_t> width( rows[0].size(), 0u );
  for ( auto const& row : rows )
    for ( size_t i = 0; i < row.size(); ++i )
      width[i] = std::max( width[i], row[i].size() );
  std::ostringstream os;
  for ( size_t k = 0; k < rows.size(); ++k )
  {
    for ( size_t i = 0; i < rows[k].size(); ++i )
    {
      auto const& cell = rows[k][i];
      auto const pad = std::string( width[i] - cell.size(), ' ' );
      os << ( i ? "  " : "" ) << ( i ? pad + cell : cell + pad );
    }
    os << "\n";
    if ( k == 0 )
    {
      for ( size_t i = 0; i < width.size(); ++i )
        os << ( i ? "  " : "" ) << std::string( width[i], '-' );
      os << "\n";
    }
  }
  return os.str();
}

inline std::string emit_reports( std::vector<mapping_report> const& rs, report_format format )
{
  switch ( format )
  {
  case report_format::text:
    return reports_to_text( rs );
  case report_format::csv:
    return reports_to_csv( rs );
  case report_format::json:
  {
    if ( rs.size() == 1u )
      return report_to_json( rs[0] ).dump( 2 ) + "\n";
    auto arr = nlohmann::ordered_json::array();
    for ( auto const& r : rs )
      arr.push_back( report_to_json( r ) );
    return arr.dump( 2 ) + "\n";
  }
  }
  throw config_error( "unsupported report format" );
}

inline std::string emit_report( mapping_report const& r, report_format format )
{
  return emit_reports( { r }, format );
}

} // namespace pbmap
