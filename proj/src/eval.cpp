#include "ndc/eval.hpp"

#include <algorithm>

#include "ndc/detail/words.hpp"
#include "ndc/error.hpp"

namespace ndc
{

namespace
{

void check_guess_limit( const circuit& c, const eval_limits& limits )
{
  if ( c.num_guesses() > limits.max_guesses )
    throw limit_error( "circuit has " + std::to_string( c.num_guesses() ) + " guess inputs, limit is " +
                       std::to_string( limits.max_guesses ) );
}

/* Evaluates 64 consecutive guess assignments (one word of the y index space) at a time. */
class chunk_simulator
{
public:
  explicit chunk_simulator( const circuit& c ) : c_( c ), values_( c.size() ) {}

  std::uint64_t run( std::uint64_t x_index, std::uint64_t chunk )
  {
    for ( std::size_t k = 0; k < c_.size(); ++k )
    {
      const auto& g = c_.gates()[k];
      values_[k] = detail::apply( g.function, word( g.left, x_index, chunk ), word( g.right, x_index, chunk ) );
    }
    const auto out = word( c_.output(), x_index, chunk );
    return c_.output_negated() ? ~out : out;
  }

  std::uint64_t num_chunks() const
  {
    return c_.num_guesses() <= 6 ? 1 : ( std::uint64_t( 1 ) << ( c_.num_guesses() - 6 ) );
  }

private:
  std::uint64_t word( node_ref ref, std::uint64_t x_index, std::uint64_t chunk ) const
  {
    switch ( ref.kind )
    {
    case node_kind::constant:
      return ref.constant_value() ? ~std::uint64_t( 0 ) : 0;
    case node_kind::actual:
      return ( ( x_index >> ( c_.num_inputs() - 1 - ref.index ) ) & 1u ) ? ~std::uint64_t( 0 ) : 0;
    case node_kind::guess:
      return detail::variable_word( c_.num_guesses() - 1 - ref.index, chunk );
    case node_kind::gate:
      return values_[ref.index];
    }
    return 0;
  }

  const circuit& c_;
  std::vector<std::uint64_t> values_;
};

std::uint64_t index_of( const bit_vector& bits )
{
  std::uint64_t index = 0;
  for ( bool b : bits )
    index = ( index << 1 ) | std::uint64_t( b );
  return index;
}

void check_lengths( const circuit& c, const bit_vector& x, const bit_vector& y )
{
  if ( x.size() != c.num_inputs() )
    throw precondition_error( "expected " + std::to_string( c.num_inputs() ) + " actual input bits, got " +
                              std::to_string( x.size() ) );
  if ( y.size() != c.num_guesses() )
    throw precondition_error( "expected " + std::to_string( c.num_guesses() ) + " guess input bits, got " +
                              std::to_string( y.size() ) );
}

} // namespace

bit_vector bits_of_index( std::uint64_t index, std::uint32_t width )
{
  bit_vector bits( width );
  for ( std::uint32_t i = 0; i < width; ++i )
    bits[i] = ( index >> ( width - 1 - i ) ) & 1u;
  return bits;
}

std::vector<bool> gate_values( const circuit& c, const bit_vector& x, const bit_vector& y )
{
  check_lengths( c, x, y );
  std::vector<bool> values( c.size() );
  auto value = [&]( node_ref ref ) -> bool {
    switch ( ref.kind )
    {
    case node_kind::constant:
      return ref.constant_value();
    case node_kind::actual:
      return x[ref.index];
    case node_kind::guess:
      return y[ref.index];
    case node_kind::gate:
      return values[ref.index];
    }
    return false;
  };
  for ( std::size_t k = 0; k < c.size(); ++k )
  {
    const auto& g = c.gates()[k];
    values[k] = g.function( value( g.left ), value( g.right ) );
  }
  return values;
}

bool eval_det( const circuit& c, const bit_vector& x, const bit_vector& y )
{
  const auto values = gate_values( c, x, y );
  const auto out = c.output();
  bool v = false;
  switch ( out.kind )
  {
  case node_kind::constant:
    v = out.constant_value();
    break;
  case node_kind::actual:
    v = x[out.index];
    break;
  case node_kind::guess:
    v = y[out.index];
    break;
  case node_kind::gate:
    v = values[out.index];
    break;
  }
  return v != c.output_negated();
}

bool eval_nondet_index( const circuit& c, std::uint64_t x_index, const eval_limits& limits )
{
  check_guess_limit( c, limits );
  chunk_simulator sim( c );
  // lanes past 2^m repeat earlier assignments, so whole words can be tested
  for ( std::uint64_t chunk = 0; chunk < sim.num_chunks(); ++chunk )
    if ( sim.run( x_index, chunk ) )
      return true;
  return false;
}

bool eval_nondet( const circuit& c, const bit_vector& x, const eval_limits& limits )
{
  check_lengths( c, x, bit_vector( c.num_guesses() ) );
  return eval_nondet_index( c, index_of( x ), limits );
}

truth_table nondet_truth_table( const circuit& c, const eval_limits& limits )
{
  if ( c.num_inputs() > limits.max_inputs )
    throw limit_error( "circuit has " + std::to_string( c.num_inputs() ) + " actual inputs, limit is " +
                       std::to_string( limits.max_inputs ) );
  check_guess_limit( c, limits );
  truth_table t( c.num_inputs() );
  chunk_simulator sim( c );
  for ( std::uint64_t x = 0; x < t.num_bits(); ++x )
  {
    for ( std::uint64_t chunk = 0; chunk < sim.num_chunks(); ++chunk )
    {
      if ( sim.run( x, chunk ) )
      {
        t.set( x, true );
        break;
      }
    }
  }
  return t;
}

truth_table joint_truth_table( const circuit& c, const eval_limits& limits )
{
  const auto arity = c.num_inputs() + c.num_guesses();
  if ( arity > limits.max_inputs )
    throw limit_error( "joint table over " + std::to_string( arity ) + " inputs exceeds the limit" );
  truth_table t( arity );
  chunk_simulator sim( c );
  const std::uint64_t lanes = std::min<std::uint64_t>( 64, std::uint64_t( 1 ) << c.num_guesses() );
  for ( std::uint64_t x = 0; x < ( std::uint64_t( 1 ) << c.num_inputs() ); ++x )
  {
    for ( std::uint64_t chunk = 0; chunk < sim.num_chunks(); ++chunk )
    {
      const auto w = sim.run( x, chunk );
      for ( std::uint64_t lane = 0; lane < lanes; ++lane )
        t.set( ( x << c.num_guesses() ) | ( chunk * 64 + lane ), ( w >> lane ) & 1u );
    }
  }
  return t;
}

std::vector<std::size_t> gate_depths( const circuit& c )
{
  std::vector<std::size_t> depth( c.size() );
  auto of = [&]( node_ref ref ) { return ref.is_gate() ? depth[ref.index] : std::size_t( 0 ); };
  for ( std::size_t k = 0; k < c.size(); ++k )
  {
    const auto& g = c.gates()[k];
    depth[k] = 1 + std::max( of( g.left ), of( g.right ) );
  }
  return depth;
}

circuit_metrics metrics( const circuit& c )
{
  circuit_metrics m;
  m.size = c.size();
  const auto depth = gate_depths( c );
  m.depth = c.output().is_gate() ? depth[c.output().index] : 0;
  for ( std::uint32_t i = 0; i < c.num_inputs(); ++i )
    m.fanout[node_ref::actual( i )] = 0;
  for ( std::uint32_t j = 0; j < c.num_guesses(); ++j )
    m.fanout[node_ref::guess( j )] = 0;
  for ( std::uint32_t k = 0; k < c.size(); ++k )
    m.fanout[node_ref::gate( k )] = 0;
  for ( const auto& g : c.gates() )
  {
    ++m.fanout[g.left];
    ++m.fanout[g.right];
  }
  ++m.fanout[c.output()];
  return m;
}

} // namespace ndc
