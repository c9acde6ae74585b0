#include "ndc/gate_function.hpp"

#include <utility>

namespace ndc
{

namespace
{

constexpr std::pair<std::string_view, gate_function> named_functions[] = {
    { "AND", fn::AND },     { "OR", fn::OR },       { "NAND", fn::NAND }, { "NOR", fn::NOR },
    { "ANDNY", fn::ANDNY }, { "ANDNX", fn::ANDNX }, { "ORNY", fn::ORNY }, { "ORNX", fn::ORNX },
    { "XOR", fn::XOR },     { "XNOR", fn::XNOR } };

} // namespace

std::optional<gate_function> gate_function::from_bits( std::string_view bits )
{
  if ( bits.size() != 4 )
    return std::nullopt;
  std::uint8_t t = 0;
  for ( unsigned row = 0; row < 4; ++row )
  {
    if ( bits[row] == '1' )
      t |= std::uint8_t( 1u << row );
    else if ( bits[row] != '0' )
      return std::nullopt;
  }
  return gate_function( t );
}

std::optional<u2_form> gate_function::u2() const
{
  if ( !is_nondegenerate_u2() )
    return std::nullopt;
  const bool c = std::popcount( table_ ) == 3;
  // the odd row out sits at (!a, !b)
  for ( unsigned row = 0; row < 4; ++row )
  {
    if ( bool( ( table_ >> row ) & 1u ) != c )
      return u2_form{ !bool( row >> 1 ), !bool( row & 1 ), c };
  }
  return std::nullopt;
}

std::string gate_function::bits() const
{
  std::string s( 4, '0' );
  for ( unsigned row = 0; row < 4; ++row )
    if ( ( table_ >> row ) & 1u )
      s[row] = '1';
  return s;
}

std::string gate_function::name() const
{
  for ( const auto& [name, f] : named_functions )
    if ( f == *this )
      return std::string( name );
  return "TT" + bits();
}

std::optional<gate_function> gate_function::from_name( std::string_view name )
{
  for ( const auto& [n, f] : named_functions )
    if ( n == name )
      return f;
  if ( name.starts_with( "TT" ) )
    return from_bits( name.substr( 2 ) );
  return std::nullopt;
}

} // namespace ndc
