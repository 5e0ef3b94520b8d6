#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pbmap
{

enum class error_stage
{
  config,
  parse,
  library,
  mapping,
  io,
  internal
};

inline char const* stage_name( error_stage s )
{
  switch ( s )
  {
  case error_stage::config:
    return "config";
  case error_stage::parse:
    return "parse";
  case error_stage::library:
    return "library";
  case error_stage::mapping:
    return "mapping";
  case error_stage::io:
    return "io";
  case error_stage::internal:
    return "internal";
  }
  return "unknown";
}

class error : public std::runtime_error
{
public:
  error( error_stage stage, std::string const& msg )
      : std::runtime_error( msg ), stage_( stage ) {}

  error_stage stage() const { return stage_; }

private:
  error_stage stage_;
};

class parse_error : public error
{
public:
  parse_error( uint32_t line, uint32_t column, std::string const& msg )
      : error( error_stage::parse, format( line, column, msg ) ), line_( line ), column_( column ) {}

  uint32_t line() const { return line_; }
  uint32_t column() const { return column_; }

private:
  static std::string format( uint32_t line, uint32_t column, std::string const& msg )
  {
    if ( line == 0 )
      return msg;
    return "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": " + msg;
  }

  uint32_t line_;
  uint32_t column_;
};

class library_error : public error
{
public:
  explicit library_error( std::string const& msg ) : error( error_stage::library, msg ) {}
};

class internal_error : public error
{
public:
  explicit internal_error( std::string const& msg ) : error( error_stage::internal, msg ) {}
};

class config_error : public error
{
public:
  explicit config_error( std::string const& msg ) : error( error_stage::config, msg ) {}
};

} // namespace pbmap
