#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ndc
{

/*! \brief Normal form ((x ^ a) & (y ^ b)) ^ c of a nondegenerate U2 function. */
struct u2_form
{
  bool a = false;
  bool b = false;
  bool c = false;

  friend bool operator==( const u2_form&, const u2_form& ) = default;
};

enum class operand_side : std::uint8_t
{
  left,
  right
};

/*! \brief Two-input Boolean function stored as a 4-bit truth table.
 *
 * Bit k of the table is the value on the row (left, right) with
 * k = 2 * left + right, so the rows are ordered (0,0), (0,1), (1,0), (1,1).
 * The textual form `bits()` lists the rows in that order, e.g. AND is "0001".
 */
class gate_function
{
public:
  constexpr gate_function() = default;
  constexpr explicit gate_function( std::uint8_t table ) : table_( table & 0xFu ) {}

  static constexpr gate_function from_u2( u2_form f )
  {
    std::uint8_t t = 0;
    for ( unsigned row = 0; row < 4; ++row )
    {
      const bool l = row >> 1, r = row & 1;
      if ( ( ( l != f.a ) && ( r != f.b ) ) != f.c )
        t |= std::uint8_t( 1u << row );
    }
    return gate_function( t );
  }

  /*! \brief Parses the 4-character row string, e.g. "0110". */
  static std::optional<gate_function> from_bits( std::string_view bits );

  constexpr std::uint8_t table() const { return table_; }

  constexpr bool operator()( bool left, bool right ) const
  {
    return ( table_ >> ( ( unsigned( left ) << 1 ) | unsigned( right ) ) ) & 1u;
  }

  constexpr bool is_u2() const { return table_ != 0x6 && table_ != 0x9; }

  /*! \brief Both operands essential and not XOR/XNOR: exactly one or three ones. */
  constexpr bool is_nondegenerate_u2() const
  {
    const int ones = std::popcount( table_ );
    return ones == 1 || ones == 3;
  }

  constexpr bool depends_on_left() const { return ( table_ & 0x3 ) != ( table_ >> 2 ); }
  constexpr bool depends_on_right() const { return ( ( table_ >> 1 ) & 0x5 ) != ( table_ & 0x5 ); }

  std::optional<u2_form> u2() const;

  /*! \brief Function of the remaining operand once `side` is fixed to `value`, as (f(0), f(1)). */
  constexpr std::array<bool, 2> restricted( operand_side side, bool value ) const
  {
    if ( side == operand_side::left )
      return { ( *this )( value, false ), ( *this )( value, true ) };
    return { ( *this )( false, value ), ( *this )( true, value ) };
  }

  constexpr gate_function negate_left() const
  {
    return gate_function( std::uint8_t( ( ( table_ & 0x3 ) << 2 ) | ( table_ >> 2 ) ) );
  }
  constexpr gate_function negate_right() const
  {
    return gate_function( std::uint8_t( ( ( table_ & 0x5 ) << 1 ) | ( ( table_ >> 1 ) & 0x5 ) ) );
  }
  constexpr gate_function negate_operand( operand_side side ) const
  {
    return side == operand_side::left ? negate_left() : negate_right();
  }
  constexpr gate_function negate_output() const { return gate_function( std::uint8_t( ~table_ ) ); }
  constexpr gate_function swap_operands() const
  {
    return gate_function( std::uint8_t( ( table_ & 0x9 ) | ( ( table_ & 0x2 ) << 1 ) | ( ( table_ & 0x4 ) >> 1 ) ) );
  }

  /*! \brief Row string, row (0,0) first. */
  std::string bits() const;

  /*! \brief Canonical mnemonic (AND, ORNX, XOR, ...) or `TT<bits>` for the degenerate tables. */
  std::string name() const;

  /*! \brief Inverse of `name()`; also accepts the `TT<bits>` form for every table. */
  static std::optional<gate_function> from_name( std::string_view name );

  friend constexpr bool operator==( gate_function, gate_function ) = default;

private:
  std::uint8_t table_ = 0;
};

namespace fn
{
inline constexpr gate_function AND{ 0x8 };
inline constexpr gate_function OR{ 0xE };
inline constexpr gate_function NAND{ 0x7 };
inline constexpr gate_function NOR{ 0x1 };
inline constexpr gate_function ANDNY{ 0x4 }; // x & !y
inline constexpr gate_function ANDNX{ 0x2 }; // !x & y
inline constexpr gate_function ORNY{ 0xD };  // x | !y
inline constexpr gate_function ORNX{ 0xB };  // !x | y
inline constexpr gate_function XOR{ 0x6 };
inline constexpr gate_function XNOR{ 0x9 };

/*! \brief The eight nondegenerate U2 functions in the fixed enumeration order. */
inline constexpr std::array<gate_function, 8> nondegenerate_u2{ AND, OR, NAND, NOR, ANDNY, ANDNX, ORNY, ORNX };
} // namespace fn

/*! \brief Blocking bit for one operand of a nondegenerate U2 gate and the constant it forces. */
struct blocking
{
  bool bit;
  bool constant;

  friend bool operator==( const blocking&, const blocking& ) = default;
};

} // namespace ndc
