#include "ndc/circuit.hpp"

#include "ndc/error.hpp"

namespace ndc
{

std::string to_string( node_ref ref )
{
  switch ( ref.kind )
  {
  case node_kind::constant:
    return ref.constant_value() ? "1" : "0";
  case node_kind::actual:
    return "x" + std::to_string( ref.index + 1 );
  case node_kind::guess:
    return "y" + std::to_string( ref.index + 1 );
  case node_kind::gate:
    return "g" + std::to_string( ref.index + 1 );
  }
  return "?";
}

circuit::circuit( std::string name, std::uint32_t num_inputs, std::uint32_t num_guesses, ndc::basis basis,
                  std::vector<gate> gates, node_ref output, bool output_negated )
    : name_( std::move( name ) ),
      num_inputs_( num_inputs ),
      num_guesses_( num_guesses ),
      basis_( basis ),
      gates_( std::move( gates ) ),
      output_( output ),
      output_negated_( output_negated )
{
  for ( std::size_t k = 0; k < gates_.size(); ++k )
  {
    const auto& g = gates_[k];
    if ( !valid_ref( g.left, k ) || !valid_ref( g.right, k ) )
      throw circuit_error( "gate g" + std::to_string( k + 1 ) + " references a node that is not defined before it" );
    if ( basis_ == basis::u2 && !g.function.is_u2() )
      throw circuit_error( "gate g" + std::to_string( k + 1 ) + " uses " + g.function.name() + " which is not in U2" );
  }
  if ( !valid_ref( output_, gates_.size() ) )
    throw circuit_error( "output references an undefined node" );
  if ( output_negated_ && !output_.is_input() )
    throw circuit_error( "only an input node can be a negated output" );
}

bool circuit::valid_ref( node_ref ref, std::size_t before_gate ) const
{
  switch ( ref.kind )
  {
  case node_kind::constant:
    return ref.index <= 1;
  case node_kind::actual:
    return ref.index < num_inputs_;
  case node_kind::guess:
    return ref.index < num_guesses_;
  case node_kind::gate:
    return ref.index < before_gate;
  }
  return false;
}

} // namespace ndc
