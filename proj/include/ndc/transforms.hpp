#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "circuit.hpp"
#include "eval.hpp"

namespace ndc
{

/*! \brief Value of the operand on `side` that blocks the gate, and the constant it then outputs.
 *
 * For ((x ^ a) & (y ^ b)) ^ c this is (a, c) on the left and (b, c) on the right.
 * Throws `precondition_error` when the function has no U2 normal form.
 */
blocking blocking_assignment( gate_function f, operand_side side );

/*! \brief Guess inputs, both constants, and every gate all of whose operands are in the set. */
std::set<node_ref> guess_only_nodes( const circuit& c );

/*! \brief Some actual input feeds at least two gates. */
struct case1_witness
{
  std::uint32_t input;
  std::uint32_t g1;
  std::uint32_t g2;
  /*! \brief Lowest-index successor of g1; empty when g1 has none (then g1 is the output). */
  std::optional<std::uint32_t> g3;

  friend bool operator==( const case1_witness&, const case1_witness& ) = default;
};

/*! \brief Every actual input feeds at most one gate; g1 joins an actual input and a guess-only node. */
struct case2_witness
{
  std::uint32_t g1;
  operand_side input_side;
  node_ref guess_side;

  friend bool operator==( const case2_witness&, const case2_witness& ) = default;
};

/*! \brief Neither case applies (for instance, there are no gates). */
struct no_witness
{
  friend bool operator==( const no_witness&, const no_witness& ) = default;
};

using case_witness = std::variant<case1_witness, case2_witness, no_witness>;

/*! \brief Classifies `c` by the two cases of the elimination argument; lowest indices win ties. */
case_witness classify_case( const circuit& c );

std::string to_string( const case_witness& w );

struct assignment_result
{
  /*! \brief Simplified circuit over the remaining actual inputs (renumbered, same guesses). */
  circuit result;
  std::size_t eliminated;
  /*! \brief 0-based indices, in the input circuit, of the gates that were removed. */
  std::vector<std::uint32_t> removed;
};

/*! \brief Fixes actual input `input` to `value` and propagates constants.
 *
 * Blocked gates become constants, gates with a non-blocking constant operand or
 * twice the same operand are replaced by a wire to the other operand with the
 * negation folded into the consumers' functions, and gates that no longer reach
 * the output are dropped. A negated gate output is folded into that gate's
 * function; a negated input output becomes the circuit's output polarity.
 */
assignment_result assign_and_simplify( const circuit& c, std::uint32_t input, bool value );

/*! \brief Complements actual input `i` by relabelling the gates that read it. Size and topology are kept. */
circuit negate_actual_input( const circuit& c, std::uint32_t i );

/*! \brief Deterministic U2 circuit for Parity_n made of n-1 chained blocks (x & !y) | (!x & y). */
circuit build_parity_circuit( std::uint32_t n );

/*! \brief Removes g1 by fixing its guess-side operand to the non-blocking value and appends a
 *  new output gate that is 1 iff the old output is 1 and the guess-side node does not block g1.
 *
 * The size is unchanged. The nondeterministic function is kept whenever the computed
 * function cannot accept two assignments that differ only in g1's actual input
 * (which holds for parity); in general the new function is below the old one.
 */
circuit case2_reconstruct( const circuit& c, const case2_witness& w );

/*! \brief Number of gates on the path from the output that each combine a guess-only
 *  operand with a non-guess-only one. Strictly grows with every Case-2 reconstruction.
 */
std::size_t guess_chain_length( const circuit& c );

struct elimination_step
{
  int case_label;
  std::uint32_t input;
  /*! \brief Case 1: the value assigned to the input. Case 2: the constant fixed on g1's guess side. */
  bool value;
  std::vector<std::uint32_t> eliminated;
  std::size_t size_before;
  std::size_t size_after;
};

struct elimination_trace
{
  std::vector<elimination_step> steps;
  /*! \brief Input complemented at the end to turn the negated parity back into parity. */
  std::optional<std::uint32_t> negated_input;

  /*! \brief One `step=<k> case=<c> input=x<i> value=<b> eliminated=[g...] size=<a>-><b>` line per step. */
  std::string serialize() const;
};

struct elimination_result
{
  circuit result;
  elimination_trace trace;
};

/*! \brief Largest arity for which `elimination_round` checks its parity precondition by truth table. */
inline constexpr std::uint32_t parity_check_arity = 12;

/*! \brief One round of gate elimination on a nondeterministic circuit for Parity_k (k = number of
 *  actual inputs, k >= 2): Case-2 reconstructions until Case 1 applies, then the blocking
 *  assignment. The result computes Parity_{k-1}.
 */
elimination_result elimination_round( const circuit& c, const eval_limits& limits = {} );

} // namespace ndc
