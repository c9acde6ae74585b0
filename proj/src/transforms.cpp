#include "ndc/transforms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ndc/error.hpp"

namespace ndc
{

namespace
{

/* A node together with a pending negation. */
struct literal
{
  node_ref node;
  bool negated = false;
};

literal constant_literal( bool value ) { return { node_ref::constant( value ), false }; }

/* The one-variable function (h(0), h(1)) applied to `operand`. */
literal one_variable( std::array<bool, 2> h, literal operand )
{
  if ( h[0] == h[1] )
    return constant_literal( h[0] );
  if ( operand.node.is_constant() )
    return constant_literal( h[operand.node.constant_value() != operand.negated] );
  return { operand.node, operand.negated != h[0] };
}

/* Drops gates not reachable from the output; returns the kept old indices in order. */
std::vector<std::uint32_t> live_gates( const std::vector<gate>& gates, node_ref output )
{
  std::vector<bool> live( gates.size(), false );
  if ( output.is_gate() )
    live[output.index] = true;
  for ( std::size_t k = gates.size(); k-- > 0; )
  {
    if ( !live[k] )
      continue;
    for ( auto op : { gates[k].left, gates[k].right } )
      if ( op.is_gate() )
        live[op.index] = true;
  }
  std::vector<std::uint32_t> kept;
  for ( std::uint32_t k = 0; k < gates.size(); ++k )
    if ( live[k] )
      kept.push_back( k );
  return kept;
}

std::vector<std::uint32_t> gates_reading( const circuit& c, node_ref node )
{
  std::vector<std::uint32_t> users;
  for ( std::uint32_t k = 0; k < c.size(); ++k )
    if ( c.gates()[k].left == node || c.gates()[k].right == node )
      users.push_back( k );
  return users;
}

bool parity_after_step_is_negated( const elimination_trace& trace )
{
  bool negated = false;
  for ( const auto& s : trace.steps )
    if ( s.case_label == 1 )
      negated = negated != s.value;
  return negated;
}

} // namespace

blocking blocking_assignment( gate_function f, operand_side side )
{
  const auto form = f.u2();
  if ( !form )
    throw precondition_error( "function " + f.name() + " has no U2 normal form" );
  return { side == operand_side::left ? form->a : form->b, form->c };
}

std::set<node_ref> guess_only_nodes( const circuit& c )
{
  std::set<node_ref> nodes{ node_ref::constant( false ), node_ref::constant( true ) };
  for ( std::uint32_t j = 0; j < c.num_guesses(); ++j )
    nodes.insert( node_ref::guess( j ) );
  for ( std::uint32_t k = 0; k < c.size(); ++k )
  {
    const auto& g = c.gates()[k];
    if ( nodes.contains( g.left ) && nodes.contains( g.right ) )
      nodes.insert( node_ref::gate( k ) );
  }
  return nodes;
}

case_witness classify_case( const circuit& c )
{
  for ( std::uint32_t i = 0; i < c.num_inputs(); ++i )
  {
    const auto users = gates_reading( c, node_ref::actual( i ) );
    if ( users.size() < 2 )
      continue;
    case1_witness w{ i, users[0], users[1], std::nullopt };
    for ( auto succ : gates_reading( c, node_ref::gate( users[0] ) ) )
    {
      w.g3 = succ;
      break;
    }
    return w;
  }

  const auto guess_only = guess_only_nodes( c );
  auto usable = [&]( node_ref ref ) { return !ref.is_constant() && guess_only.contains( ref ); };
  for ( std::uint32_t k = 0; k < c.size(); ++k )
  {
    const auto& g = c.gates()[k];
    if ( g.left.is_actual() && usable( g.right ) )
      return case2_witness{ k, operand_side::left, g.right };
    if ( g.right.is_actual() && usable( g.left ) )
      return case2_witness{ k, operand_side::right, g.left };
  }
  return no_witness{};
}

std::string to_string( const case_witness& w )
{
  std::ostringstream os;
  if ( const auto* w1 = std::get_if<case1_witness>( &w ) )
  {
    os << "case=1 input=x" << ( w1->input + 1 ) << " g1=g" << ( w1->g1 + 1 ) << " g2=g" << ( w1->g2 + 1 ) << " g3=";
    if ( w1->g3 )
      os << "g" << ( *w1->g3 + 1 );
    else
      os << "OUTPUT";
  }
  else if ( const auto* w2 = std::get_if<case2_witness>( &w ) )
  {
    os << "case=2 g1=g" << ( w2->g1 + 1 ) << " input_side=" << ( w2->input_side == operand_side::left ? "left" : "right" )
       << " v=" << to_string( w2->guess_side );
  }
  else
  {
    os << "case=none";
  }
  return os.str();
}

assignment_result assign_and_simplify( const circuit& c, std::uint32_t input, bool value )
{
  if ( input >= c.num_inputs() )
    throw precondition_error( "actual input x" + std::to_string( input + 1 ) + " does not exist" );

  std::vector<gate> out_gates;
  std::vector<std::uint32_t> origin; // old gate index of each emitted gate
  std::vector<literal> replacement( c.size() );

  auto resolve = [&]( node_ref ref ) -> literal {
    switch ( ref.kind )
    {
    case node_kind::actual:
      if ( ref.index == input )
        return constant_literal( value );
      return { node_ref::actual( ref.index > input ? ref.index - 1 : ref.index ), false };
    case node_kind::gate:
      return replacement[ref.index];
    default:
      return { ref, false };
    }
  };

  for ( std::uint32_t k = 0; k < c.size(); ++k )
  {
    const auto& g = c.gates()[k];
    auto l = resolve( g.left );
    auto r = resolve( g.right );
    auto f = g.function;
    if ( l.negated && !l.node.is_constant() )
      f = f.negate_left();
    if ( r.negated && !r.node.is_constant() )
      f = f.negate_right();
    // after absorbing, constants carry their value in the node
    if ( l.node.is_constant() )
      l = constant_literal( l.node.constant_value() != l.negated );
    if ( r.node.is_constant() )
      r = constant_literal( r.node.constant_value() != r.negated );
    l.negated = r.negated = false;

    literal result;
    if ( l.node.is_constant() )
      result = one_variable( f.restricted( operand_side::left, l.node.constant_value() ), r );
    else if ( r.node.is_constant() )
      result = one_variable( f.restricted( operand_side::right, r.node.constant_value() ), l );
    else if ( l.node == r.node )
      result = one_variable( { f( false, false ), f( true, true ) }, l );
    else if ( !f.depends_on_left() )
      result = one_variable( f.restricted( operand_side::left, false ), r );
    else if ( !f.depends_on_right() )
      result = one_variable( f.restricted( operand_side::right, false ), l );
    else
    {
      result = { node_ref::gate( std::uint32_t( out_gates.size() ) ), false };
      out_gates.push_back( { f, l.node, r.node } );
      origin.push_back( k );
    }
    replacement[k] = result;
  }

  literal out = resolve( c.output() );
  out.negated = out.negated != c.output_negated();
  node_ref output = out.node;
  bool output_negated = false;
  if ( out.node.is_constant() )
  {
    output = node_ref::constant( out.node.constant_value() != out.negated );
  }
  else if ( out.node.is_input() )
  {
    output_negated = out.negated;
  }
  else if ( out.negated )
  {
    // fold the negation into the output gate and compensate its other readers
    auto& og = out_gates[out.node.index];
    og.function = og.function.negate_output();
    for ( auto& g : out_gates )
    {
      if ( g.left == out.node )
        g.function = g.function.negate_left();
      if ( g.right == out.node )
        g.function = g.function.negate_right();
    }
  }

  const auto kept = live_gates( out_gates, output );
  std::vector<std::uint32_t> new_index( out_gates.size(), 0 );
  for ( std::uint32_t k = 0; k < kept.size(); ++k )
    new_index[kept[k]] = k;
  auto renumber = [&]( node_ref ref ) { return ref.is_gate() ? node_ref::gate( new_index[ref.index] ) : ref; };
  std::vector<gate> final_gates;
  std::vector<bool> survived( c.size(), false );
  for ( auto k : kept )
  {
    const auto& g = out_gates[k];
    final_gates.push_back( { g.function, renumber( g.left ), renumber( g.right ) } );
    survived[origin[k]] = true;
  }
  std::vector<std::uint32_t> removed;
  for ( std::uint32_t k = 0; k < c.size(); ++k )
    if ( !survived[k] )
      removed.push_back( k );

  circuit result( c.name(), c.num_inputs() - 1, c.num_guesses(), c.basis(), std::move( final_gates ),
                  renumber( output ), output_negated );
  const auto eliminated = c.size() - result.size();
  return { std::move( result ), eliminated, std::move( removed ) };
}

circuit negate_actual_input( const circuit& c, std::uint32_t i )
{
  if ( i >= c.num_inputs() )
    throw precondition_error( "actual input x" + std::to_string( i + 1 ) + " does not exist" );
  const auto x = node_ref::actual( i );
  auto gates = c.gates();
  for ( auto& g : gates )
  {
    if ( g.left == x )
      g.function = g.function.negate_left();
    if ( g.right == x )
      g.function = g.function.negate_right();
  }
  const bool negated = c.output() == x ? !c.output_negated() : c.output_negated();
  return circuit( c.name(), c.num_inputs(), c.num_guesses(), c.basis(), std::move( gates ), c.output(), negated );
}

circuit build_parity_circuit( std::uint32_t n )
{
  if ( n == 0 )
    throw precondition_error( "parity needs at least one input" );
  std::vector<gate> gates;
  node_ref acc = node_ref::actual( 0 );
  for ( std::uint32_t i = 1; i < n; ++i )
  {
    const auto x = node_ref::actual( i );
    const auto base = std::uint32_t( gates.size() );
    gates.push_back( { fn::ANDNY, acc, x } );
    gates.push_back( { fn::ANDNX, acc, x } );
    gates.push_back( { fn::OR, node_ref::gate( base ), node_ref::gate( base + 1 ) } );
    acc = node_ref::gate( base + 2 );
  }
  return circuit( "parity" + std::to_string( n ), n, 0, basis::u2, std::move( gates ), acc );
}

circuit case2_reconstruct( const circuit& c, const case2_witness& w )
{
  if ( w.g1 >= c.size() )
    throw precondition_error( "case-2 witness names a gate that does not exist" );
  const auto& g1 = c.gates()[w.g1];
  const auto v_side = w.input_side == operand_side::left ? operand_side::right : operand_side::left;
  const auto x = g1.operand( w.input_side );
  const auto guess_only = guess_only_nodes( c );
  if ( !x.is_actual() || g1.operand( v_side ) != w.guess_side || w.guess_side.is_constant() ||
       !guess_only.contains( w.guess_side ) )
    throw precondition_error( "case-2 witness does not match gate g" + std::to_string( w.g1 + 1 ) );
  for ( std::uint32_t i = 0; i < c.num_inputs(); ++i )
    if ( gates_reading( c, node_ref::actual( i ) ).size() > 1 )
      throw precondition_error( "case-2 witness is invalid: x" + std::to_string( i + 1 ) + " feeds several gates" );
  if ( !g1.function.u2() )
    throw precondition_error( "gate g" + std::to_string( w.g1 + 1 ) + " has no U2 normal form" );

  const bool blocking_bit = blocking_assignment( g1.function, v_side ).bit;
  // with the guess side held at the non-blocking value g1 is x or !x
  const auto h = g1.function.restricted( v_side, !blocking_bit );
  const literal wire{ x, h[0] };

  auto shift = [&]( node_ref ref ) {
    if ( ref.is_gate() && ref.index > w.g1 )
      return node_ref::gate( ref.index - 1 );
    return ref;
  };

  std::vector<gate> gates;
  gates.reserve( c.size() );
  for ( std::uint32_t k = 0; k < c.size(); ++k )
  {
    if ( k == w.g1 )
      continue;
    auto g = c.gates()[k];
    if ( g.left == node_ref::gate( w.g1 ) )
    {
      g.left = wire.node;
      if ( wire.negated )
        g.function = g.function.negate_left();
    }
    else
    {
      g.left = shift( g.left );
    }
    if ( g.right == node_ref::gate( w.g1 ) )
    {
      g.right = wire.node;
      if ( wire.negated )
        g.function = g.function.negate_right();
    }
    else
    {
      g.right = shift( g.right );
    }
    gates.push_back( g );
  }

  literal old_output{ shift( c.output() ), c.output_negated() };
  if ( c.output() == node_ref::gate( w.g1 ) )
    old_output = wire;

  // 1 iff old output = 1 and v = !blocking_bit
  const auto combine = gate_function::from_u2( { old_output.negated, blocking_bit, false } );
  gates.push_back( { combine, old_output.node, shift( w.guess_side ) } );
  const auto output = node_ref::gate( std::uint32_t( gates.size() - 1 ) );
  return circuit( c.name(), c.num_inputs(), c.num_guesses(), c.basis(), std::move( gates ), output );
}

std::size_t guess_chain_length( const circuit& c )
{
  const auto guess_only = guess_only_nodes( c );
  auto is_guess_only = [&]( node_ref ref ) { return !ref.is_constant() && guess_only.contains( ref ); };
  std::size_t length = 0;
  node_ref node = c.output();
  while ( node.is_gate() )
  {
    const auto& g = c.gates()[node.index];
    if ( is_guess_only( g.left ) && !guess_only.contains( g.right ) )
      node = g.right;
    else if ( is_guess_only( g.right ) && !guess_only.contains( g.left ) )
      node = g.left;
    else
      break;
    ++length;
  }
  return length;
}

std::string elimination_trace::serialize() const
{
  std::ostringstream os;
  for ( std::size_t s = 0; s < steps.size(); ++s )
  {
    const auto& st = steps[s];
    os << "step=" << ( s + 1 ) << " case=" << st.case_label << " input=x" << ( st.input + 1 ) << " value=" << st.value
       << " eliminated=[";
    for ( std::size_t e = 0; e < st.eliminated.size(); ++e )
      os << ( e ? "," : "" ) << "g" << ( st.eliminated[e] + 1 );
    os << "] size=" << st.size_before << "->" << st.size_after << "\n";
  }
  if ( negated_input )
    os << "negate input=x" << ( *negated_input + 1 ) << "\n";
  return os.str();
}

elimination_result elimination_round( const circuit& c, const eval_limits& limits )
{
  const auto k = c.num_inputs();
  if ( k < 2 )
    throw precondition_error( "elimination needs a parity circuit with at least two actual inputs" );
  if ( k <= parity_check_arity && nondet_truth_table( c, limits ) != truth_table::parity( k ) )
    throw precondition_error( "circuit does not compute Parity_" + std::to_string( k ) );

  elimination_trace trace;
  circuit current = c;
  // every reconstruction lengthens the guess chain, which is bounded by the size
  for ( std::size_t round = 0; round <= c.size() + 1; ++round )
  {
    const auto witness = classify_case( current );
    if ( const auto* w2 = std::get_if<case2_witness>( &witness ) )
    {
      const auto chain_before = guess_chain_length( current );
      const auto& g1 = current.gates()[w2->g1];
      const auto v_side = w2->input_side == operand_side::left ? operand_side::right : operand_side::left;
      const bool fixed = !blocking_assignment( g1.function, v_side ).bit;
      auto next = case2_reconstruct( current, *w2 );
      if ( guess_chain_length( next ) <= chain_before )
        throw std::logic_error( "case-2 reconstruction did not lengthen the guess chain" );
      trace.steps.push_back( { 2, g1.operand( w2->input_side ).index, fixed, { w2->g1 }, current.size(), next.size() } );
      current = std::move( next );
      continue;
    }
    if ( const auto* w1 = std::get_if<case1_witness>( &witness ) )
    {
      const auto& g1 = current.gates()[w1->g1];
      const auto side = g1.left == node_ref::actual( w1->input ) ? operand_side::left : operand_side::right;
      const auto block = blocking_assignment( g1.function, side );
      auto assigned = assign_and_simplify( current, w1->input, block.bit );
      trace.steps.push_back(
          { 1, w1->input, block.bit, assigned.removed, current.size(), assigned.result.size() } );
      circuit result = std::move( assigned.result );
      if ( parity_after_step_is_negated( trace ) )
      {
        result = negate_actual_input( result, 0 );
        trace.negated_input = 0;
      }
      if ( k - 1 <= parity_check_arity && nondet_truth_table( result, limits ) != truth_table::parity( k - 1 ) )
        throw std::logic_error( "elimination round did not produce Parity_" + std::to_string( k - 1 ) );
      return { std::move( result ), std::move( trace ) };
    }
    throw precondition_error( "no gate combines an actual input with a guess-only node" );
  }
  throw std::logic_error( "case-2 reconstruction did not terminate" );
}

} // namespace ndc
