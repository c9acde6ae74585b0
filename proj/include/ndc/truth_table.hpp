#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ndc
{

/*! \brief Complete table of a function of `arity` actual inputs.
 *
 * Entry `index` is the value on the assignment whose binary digits are
 * (x1 ... x_arity) with x1 the most significant bit. The string form lists
 * entries in index order, so Parity_2 is "0110".
 */
class truth_table
{
public:
  truth_table() : truth_table( 0 ) {}
  explicit truth_table( std::uint32_t arity );

  static truth_table from_string( std::string_view bits );
  static truth_table parity( std::uint32_t arity );
  static truth_table constant( std::uint32_t arity, bool value );
  /*! \brief The projection onto x_i, i is 0-based. */
  static truth_table projection( std::uint32_t arity, std::uint32_t i );

  std::uint32_t arity() const { return arity_; }
  std::uint64_t num_bits() const { return std::uint64_t( 1 ) << arity_; }

  bool get( std::uint64_t index ) const { return ( words_[index >> 6] >> ( index & 63 ) ) & 1u; }
  void set( std::uint64_t index, bool value )
  {
    const auto mask = std::uint64_t( 1 ) << ( index & 63 );
    if ( value )
      words_[index >> 6] |= mask;
    else
      words_[index >> 6] &= ~mask;
  }

  /*! \brief Bit position of input x_i (0-based) inside an index. */
  std::uint32_t input_bit( std::uint32_t i ) const { return arity_ - 1 - i; }

  truth_table complement() const;
  /*! \brief The function with x_i complemented: entry k moves to k ^ (bit of x_i). */
  truth_table flip_input( std::uint32_t i ) const;
  bool depends_on( std::uint32_t i ) const;
  std::uint64_t count_ones() const;

  std::string to_string() const;

  friend bool operator==( const truth_table&, const truth_table& ) = default;

private:
  std::uint32_t arity_;
  std::vector<std::uint64_t> words_;
};

} // namespace ndc
