#pragma once

#include <array>
#include <cstdint>

#include "../gate_function.hpp"

namespace ndc::detail
{

/*! \brief Lane pattern of bit `p` (p < 6) of the lane index inside a 64-bit word. */
inline constexpr std::array<std::uint64_t, 6> lane_patterns{
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull };

/*! \brief Word of the variable occupying bit `p` of an index, in the word with number `word`. */
inline constexpr std::uint64_t variable_word( std::uint32_t p, std::uint64_t word )
{
  if ( p < 6 )
    return lane_patterns[p];
  return ( ( word >> ( p - 6 ) ) & 1u ) ? ~std::uint64_t( 0 ) : 0;
}

/*! \brief Bitwise application of a two-input function to 64 lanes at once. */
inline constexpr std::uint64_t apply( gate_function f, std::uint64_t l, std::uint64_t r )
{
  std::uint64_t out = 0;
  const auto t = f.table();
  if ( t & 0x1 )
    out |= ~l & ~r;
  if ( t & 0x2 )
    out |= ~l & r;
  if ( t & 0x4 )
    out |= l & ~r;
  if ( t & 0x8 )
    out |= l & r;
  return out;
}

} // namespace ndc::detail
