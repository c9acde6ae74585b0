#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gate_function.hpp"

namespace ndc
{

enum class node_kind : std::uint8_t
{
  constant,
  actual,
  guess,
  gate
};

/*! \brief Reference to a node of a circuit. All indices are 0-based; text uses x1, y1, g1. */
struct node_ref
{
  node_kind kind = node_kind::constant;
  std::uint32_t index = 0;

  static constexpr node_ref constant( bool value ) { return { node_kind::constant, value ? 1u : 0u }; }
  static constexpr node_ref actual( std::uint32_t i ) { return { node_kind::actual, i }; }
  static constexpr node_ref guess( std::uint32_t j ) { return { node_kind::guess, j }; }
  static constexpr node_ref gate( std::uint32_t k ) { return { node_kind::gate, k }; }

  constexpr bool is_constant() const { return kind == node_kind::constant; }
  constexpr bool is_actual() const { return kind == node_kind::actual; }
  constexpr bool is_guess() const { return kind == node_kind::guess; }
  constexpr bool is_gate() const { return kind == node_kind::gate; }
  constexpr bool is_input() const { return is_actual() || is_guess(); }
  constexpr bool constant_value() const { return index != 0; }

  friend constexpr auto operator<=>( const node_ref&, const node_ref& ) = default;
};

/*! \brief `x3`, `y1`, `g2`, `0`, `1`. */
std::string to_string( node_ref ref );

enum class basis : std::uint8_t
{
  u2,
  b2
};

struct gate
{
  gate_function function;
  node_ref left;
  node_ref right;

  node_ref operand( operand_side side ) const { return side == operand_side::left ? left : right; }

  friend bool operator==( const gate&, const gate& ) = default;
};

/*! \brief Fan-in-2 circuit over actual inputs x, guess inputs y and constants.
 *
 * Immutable after construction; the constructor validates that gate operands
 * only reference inputs in range and earlier gates. The output may be any node.
 * A negated output is only representable when the output is an input node;
 * negations behind gates live in the gate's function instead.
 */
class circuit
{
public:
  circuit( std::string name, std::uint32_t num_inputs, std::uint32_t num_guesses, basis basis,
           std::vector<gate> gates, node_ref output, bool output_negated = false );

  const std::string& name() const { return name_; }
  std::uint32_t num_inputs() const { return num_inputs_; }
  std::uint32_t num_guesses() const { return num_guesses_; }
  ndc::basis basis() const { return basis_; }
  const std::vector<gate>& gates() const { return gates_; }
  const gate& gate_at( std::uint32_t index ) const { return gates_.at( index ); }
  node_ref output() const { return output_; }
  bool output_negated() const { return output_negated_; }
  std::size_t size() const { return gates_.size(); }

  /*! \brief Whether `ref` names a node of this circuit (gates only those before `before_gate`). */
  bool valid_ref( node_ref ref, std::size_t before_gate ) const;

  friend bool operator==( const circuit&, const circuit& ) = default;

private:
  std::string name_;
  std::uint32_t num_inputs_;
  std::uint32_t num_guesses_;
  ndc::basis basis_;
  std::vector<gate> gates_;
  node_ref output_;
  bool output_negated_;
};

} // namespace ndc
