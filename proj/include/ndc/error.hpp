#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ndc
{

/*! \brief Structural problem with a circuit (bad reference, basis violation, ...). */
class circuit_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief Syntax or resolution error while reading circuit text. */
class parse_error : public std::runtime_error
{
public:
  parse_error( std::size_t line, std::size_t column, const std::string& what )
      : std::runtime_error( std::to_string( line ) + ":" + std::to_string( column ) + ": " + what ),
        line_( line ),
        column_( column )
  {
  }

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/*! \brief A configured exhaustion limit (guess count, arity, search size) was exceeded. */
class limit_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief An operation's precondition does not hold for the given arguments. */
class precondition_error : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace ndc
