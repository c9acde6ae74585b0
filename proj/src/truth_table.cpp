#include "ndc/truth_table.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "ndc/error.hpp"

namespace ndc
{

truth_table::truth_table( std::uint32_t arity ) : arity_( arity )
{
  if ( arity > 30 )
    throw limit_error( "truth table arity " + std::to_string( arity ) + " is too large" );
  words_.assign( std::max<std::uint64_t>( 1, num_bits() / 64 ), 0 );
}

truth_table truth_table::from_string( std::string_view bits )
{
  if ( bits.empty() || !std::has_single_bit( bits.size() ) )
    throw std::invalid_argument( "truth table length must be a power of two" );
  truth_table t( std::uint32_t( std::countr_zero( bits.size() ) ) );
  for ( std::size_t k = 0; k < bits.size(); ++k )
  {
    if ( bits[k] != '0' && bits[k] != '1' )
      throw std::invalid_argument( "truth table characters must be 0 or 1" );
    t.set( k, bits[k] == '1' );
  }
  return t;
}

truth_table truth_table::parity( std::uint32_t arity )
{
  truth_table t( arity );
  for ( std::uint64_t k = 0; k < t.num_bits(); ++k )
    t.set( k, std::popcount( k ) & 1 );
  return t;
}

truth_table truth_table::constant( std::uint32_t arity, bool value )
{
  truth_table t( arity );
  if ( value )
    for ( std::uint64_t k = 0; k < t.num_bits(); ++k )
      t.set( k, true );
  return t;
}

truth_table truth_table::projection( std::uint32_t arity, std::uint32_t i )
{
  truth_table t( arity );
  for ( std::uint64_t k = 0; k < t.num_bits(); ++k )
    t.set( k, ( k >> t.input_bit( i ) ) & 1u );
  return t;
}

truth_table truth_table::complement() const
{
  truth_table t( arity_ );
  for ( std::uint64_t k = 0; k < num_bits(); ++k )
    t.set( k, !get( k ) );
  return t;
}

truth_table truth_table::flip_input( std::uint32_t i ) const
{
  truth_table t( arity_ );
  const auto mask = std::uint64_t( 1 ) << input_bit( i );
  for ( std::uint64_t k = 0; k < num_bits(); ++k )
    t.set( k ^ mask, get( k ) );
  return t;
}

bool truth_table::depends_on( std::uint32_t i ) const
{
  const auto mask = std::uint64_t( 1 ) << input_bit( i );
  for ( std::uint64_t k = 0; k < num_bits(); ++k )
    if ( get( k ) != get( k ^ mask ) )
      return true;
  return false;
}

std::uint64_t truth_table::count_ones() const
{
  std::uint64_t n = 0;
  for ( auto w : words_ )
    n += std::popcount( w );
  return n;
}

std::string truth_table::to_string() const
{
  std::string s( num_bits(), '0' );
  for ( std::uint64_t k = 0; k < num_bits(); ++k )
    if ( get( k ) )
      s[k] = '1';
  return s;
}

} // namespace ndc
