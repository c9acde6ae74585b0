#include "ndc/fixtures.hpp"

#include <algorithm>
#include <vector>

namespace ndc
{

namespace
{

circuit draw( std::mt19937_64& rng, const random_circuit_options& options, bool single_fanout )
{
  std::vector<gate_function> functions( fn::nondegenerate_u2.begin(), fn::nondegenerate_u2.end() );
  if ( options.basis == basis::b2 )
  {
    functions.push_back( fn::XOR );
    functions.push_back( fn::XNOR );
  }
  if ( options.allow_degenerate )
  {
    for ( unsigned t = 0; t < 16; ++t )
    {
      const gate_function f( static_cast<std::uint8_t>( t ) );
      if ( !f.is_nondegenerate_u2() && f.is_u2() )
        functions.push_back( f );
    }
  }

  auto pick = [&]( std::size_t bound ) { return std::size_t( rng() % bound ); };

  std::vector<bool> used( options.num_inputs, false );
  std::vector<gate> gates;
  gates.reserve( options.size );
  for ( std::uint32_t k = 0; k < options.size; ++k )
  {
    std::vector<node_ref> pool;
    for ( std::uint32_t i = 0; i < options.num_inputs; ++i )
      if ( !single_fanout || !used[i] )
        pool.push_back( node_ref::actual( i ) );
    for ( std::uint32_t j = 0; j < options.num_guesses; ++j )
      pool.push_back( node_ref::guess( j ) );
    for ( std::uint32_t g = 0; g < k; ++g )
      pool.push_back( node_ref::gate( g ) );
    if ( options.allow_constants || pool.empty() )
    {
      pool.push_back( node_ref::constant( false ) );
      pool.push_back( node_ref::constant( true ) );
    }
    auto operand = [&] {
      const auto ref = pool[pick( pool.size() )];
      if ( single_fanout && ref.is_actual() )
      {
        used[ref.index] = true;
        pool.erase( std::find( pool.begin(), pool.end(), ref ) );
      }
      return ref;
    };
    const auto f = functions[pick( functions.size() )];
    const auto l = operand();
    const auto r = pool.empty() ? node_ref::constant( rng() & 1 ) : operand();
    gates.push_back( { f, l, r } );
  }

  node_ref output = node_ref::constant( rng() & 1 );
  bool negated = false;
  if ( options.size > 0 )
  {
    output = node_ref::gate( options.size - 1 );
  }
  else if ( options.num_inputs > 0 )
  {
    output = node_ref::actual( std::uint32_t( pick( options.num_inputs ) ) );
    negated = rng() & 1;
  }
  return circuit( "random", options.num_inputs, options.num_guesses, options.basis, std::move( gates ), output,
                  negated );
}

} // namespace

circuit random_circuit( std::mt19937_64& rng, const random_circuit_options& options )
{
  return draw( rng, options, false );
}

circuit random_single_fanout_circuit( std::mt19937_64& rng, const random_circuit_options& options )
{
  return draw( rng, options, true );
}

} // namespace ndc
