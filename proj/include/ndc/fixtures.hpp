#pragma once

#include <cstdint>
#include <random>

#include "circuit.hpp"

namespace ndc
{

/*! \brief Shape of a random circuit drawn by `random_circuit`. */
struct random_circuit_options
{
  std::uint32_t num_inputs = 2;
  std::uint32_t num_guesses = 0;
  std::uint32_t size = 3;
  ndc::basis basis = basis::u2;
  /*! \brief Constants may appear as operands (always allowed when no other node exists). */
  bool allow_constants = false;
  /*! \brief Degenerate tables (constants, projections) may be drawn. */
  bool allow_degenerate = false;
};

/*! \brief Draws gates with uniformly chosen operands among the nodes defined so far; the
 *  output is the last gate, or an input when the size is zero. Functions are drawn from
 *  the eight nondegenerate U2 functions, plus XOR/XNOR under B2.
 */
circuit random_circuit( std::mt19937_64& rng, const random_circuit_options& options );

/*! \brief Like `random_circuit`, but every actual input is read by at most one gate slot. */
circuit random_single_fanout_circuit( std::mt19937_64& rng, const random_circuit_options& options );

} // namespace ndc
