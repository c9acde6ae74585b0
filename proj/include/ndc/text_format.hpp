#pragma once

#include <string>
#include <string_view>

#include "circuit.hpp"

namespace ndc
{

/*! \brief Reads the line-oriented circuit format.
 *
 *   # comment
 *   circuit <name> inputs=<n> guess=<m> [basis U2|B2]
 *   <id> = <FN>(<operand>, <operand>)
 *   output [!]<operand>
 *
 * Lines may also be separated by ';'. Operands are x<i>, y<j>, 0, 1 or a gate
 * id; gates may appear in any order as long as the references are acyclic.
 * The `!` prefix on the output is only accepted in front of an input.
 */
circuit parse_circuit( std::string_view text );

/*! \brief Writes `c` with gates named g1..gs; `parse_circuit(emit_circuit(c)) == c`. */
std::string emit_circuit( const circuit& c );

/*! \brief Single-line form with '; ' separators, used inside certificates. */
std::string emit_circuit_inline( const circuit& c );

} // namespace ndc
