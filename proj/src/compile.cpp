#include "ndc/compile.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <sstream>

#include "ndc/detail/words.hpp"
#include "ndc/error.hpp"

namespace ndc
{

/******************************************************************************
 * Clause templates                                                           *
 ******************************************************************************/

namespace
{

/* A clause over (z, a, b) in base 3: per position 0 = absent, 1 = negative, 2 = positive. */
struct candidate
{
  std::vector<template_literal> literals;
  std::uint8_t falsified; /* mask over the 8 assignments z*4 + a*2 + b */
};

std::vector<candidate> all_candidates()
{
  std::vector<candidate> out;
  for ( unsigned code = 1; code < 27; ++code )
  {
    candidate cand{ {}, 0 };
    unsigned rest = code;
    std::array<unsigned, 3> state{};
    for ( unsigned p = 0; p < 3; ++p, rest /= 3 )
    {
      state[p] = rest % 3;
      if ( state[p] )
        cand.literals.push_back( { std::uint8_t( p ), state[p] == 2 } );
    }
    for ( unsigned z = 0; z < 2; ++z )
      for ( unsigned a = 0; a < 2; ++a )
        for ( unsigned b = 0; b < 2; ++b )
        {
          const std::array<unsigned, 3> v{ z, a, b };
          bool sat = false;
          for ( unsigned p = 0; p < 3; ++p )
            if ( state[p] && ( v[p] == 1 ) == ( state[p] == 2 ) )
              sat = true;
          if ( !sat )
            cand.falsified |= std::uint8_t( 1u << ( z * 4 + a * 2 + b ) );
        }
    out.push_back( std::move( cand ) );
  }
  return out;
}

bool template_less( const std::vector<template_literal>& l, const std::vector<template_literal>& r )
{
  if ( l.size() != r.size() )
    return l.size() < r.size();
  for ( std::size_t i = 0; i < l.size(); ++i )
  {
    if ( l[i].position != r[i].position )
      return l[i].position < r[i].position;
    if ( l[i].positive != r[i].positive )
      return r[i].positive;
  }
  return false;
}

/* Smallest cover of the falsifying assignments by clauses, fewest literals on ties. */
clause_template compute_template( gate_function f )
{
  std::uint8_t forbidden = 0;
  for ( unsigned a = 0; a < 2; ++a )
    for ( unsigned b = 0; b < 2; ++b )
    {
      const unsigned z = f( a, b ) ? 0 : 1;
      forbidden |= std::uint8_t( 1u << ( z * 4 + a * 2 + b ) );
    }
  std::vector<candidate> valid;
  for ( auto& cand : all_candidates() )
    if ( ( cand.falsified & ~forbidden ) == 0 )
      valid.push_back( std::move( cand ) );

  std::optional<std::uint32_t> best;
  std::pair<int, std::size_t> best_cost{ 0, 0 };
  for ( std::uint32_t subset = 1; subset < ( 1u << valid.size() ); ++subset )
  {
    const auto count = std::popcount( subset );
    if ( count > 4 || ( best && count > best_cost.first ) )
      continue;
    std::uint8_t covered = 0;
    std::size_t width = 0;
    for ( std::size_t i = 0; i < valid.size(); ++i )
      if ( ( subset >> i ) & 1u )
      {
        covered |= valid[i].falsified;
        width += valid[i].literals.size();
      }
    if ( covered != forbidden )
      continue;
    const std::pair<int, std::size_t> cost{ count, width };
    if ( !best || cost < best_cost )
    {
      best = subset;
      best_cost = cost;
    }
  }
  clause_template out;
  for ( std::size_t i = 0; i < valid.size(); ++i )
    if ( ( *best >> i ) & 1u )
      out.push_back( valid[i].literals );
  std::sort( out.begin(), out.end(), template_less );
  return out;
}

} // namespace

const clause_template& tseitin_template( gate_function f )
{
  static const auto templates = [] {
    std::array<clause_template, 16> t;
    for ( unsigned bits = 0; bits < 16; ++bits )
      t[bits] = compute_template( gate_function( std::uint8_t( bits ) ) );
    return t;
  }();
  return templates[f.table()];
}

/******************************************************************************
 * Tseitin encoding and evaluation                                            *
 ******************************************************************************/

std::size_t cnf_formula::max_width() const
{
  std::size_t w = 0;
  for ( const auto& cl : clauses )
    w = std::max( w, cl.size() );
  return w;
}

namespace
{

/* A node as a literal, or as a constant when `variable` is 0. */
struct node_literal
{
  std::uint32_t variable;
  bool positive;
};

node_literal literal_of( const circuit& c, node_ref ref )
{
  switch ( ref.kind )
  {
  case node_kind::constant:
    return { 0, ref.constant_value() };
  case node_kind::actual:
    return { ref.index + 1, true };
  case node_kind::gate:
    return { c.num_inputs() + ref.index + 1, true };
  case node_kind::guess:
    break;
  }
  throw precondition_error( "Tseitin encoding needs a circuit without guess inputs" );
}

} // namespace

cnf_formula tseitin_cnf( const circuit& c )
{
  if ( c.num_guesses() != 0 )
    throw precondition_error( "Tseitin encoding needs a circuit without guess inputs" );

  cnf_formula f;
  f.num_actual = c.num_inputs();
  f.num_guess = std::uint32_t( c.size() );

  for ( std::uint32_t k = 0; k < c.size(); ++k )
  {
    const auto& g = c.gate_at( k );
    const std::array<node_literal, 3> slots{ node_literal{ c.num_inputs() + k + 1, true }, literal_of( c, g.left ),
                                             literal_of( c, g.right ) };
    for ( const auto& tmpl : tseitin_template( g.function ) )
    {
      cnf_clause clause;
      bool satisfied = false;
      for ( const auto& lit : tmpl )
      {
        const auto& s = slots[lit.position];
        if ( s.variable == 0 )
        {
          // constant operand: a true literal satisfies the clause, a false one drops out
          satisfied |= s.positive == lit.positive;
          continue;
        }
        const cnf_literal l{ s.variable, s.positive == lit.positive };
        if ( std::find( clause.begin(), clause.end(), cnf_literal{ l.variable, !l.positive } ) != clause.end() )
          satisfied = true;
        else if ( std::find( clause.begin(), clause.end(), l ) == clause.end() )
          clause.push_back( l );
      }
      if ( !satisfied )
        f.clauses.push_back( std::move( clause ) );
    }
  }

  const auto out = literal_of( c, c.output() );
  if ( out.variable != 0 )
  {
    f.clauses.push_back( { cnf_literal{ out.variable, out.positive != c.output_negated() } } );
  }
  else if ( out.positive == c.output_negated() )
  {
    // constant 0: the empty clause
    f.clauses.emplace_back();
  }
  return f;
}

namespace
{

template<class Visit>
void for_each_model_word( const cnf_formula& f, const bit_vector& x, const eval_limits& limits, Visit&& visit )
{
  if ( x.size() != f.num_actual )
    throw precondition_error( "expected " + std::to_string( f.num_actual ) + " actual bits, got " +
                              std::to_string( x.size() ) );
  if ( f.num_guess > limits.max_guesses )
    throw limit_error( "formula has " + std::to_string( f.num_guess ) + " guess variables, limit is " +
                       std::to_string( limits.max_guesses ) );
  const auto m = f.num_guess;
  const std::uint64_t lanes = m < 6 ? ( std::uint64_t( 1 ) << ( std::uint64_t( 1 ) << m ) ) - 1 : ~std::uint64_t( 0 );
  const std::uint64_t words = m <= 6 ? 1 : ( std::uint64_t( 1 ) << ( m - 6 ) );
  for ( std::uint64_t w = 0; w < words; ++w )
  {
    std::uint64_t all = lanes;
    for ( const auto& clause : f.clauses )
    {
      std::uint64_t any = 0;
      for ( const auto& lit : clause )
      {
        std::uint64_t value;
        if ( lit.variable <= f.num_actual )
          value = x[lit.variable - 1] ? ~std::uint64_t( 0 ) : 0;
        else
          value = detail::variable_word( m - ( lit.variable - f.num_actual ), w );
        any |= lit.positive ? value : ~value;
      }
      all &= any;
      if ( !all )
        break;
    }
    if ( !visit( all ) )
      return;
  }
}

} // namespace

std::uint64_t cnf_count_models( const cnf_formula& f, const bit_vector& x, const eval_limits& limits )
{
  std::uint64_t count = 0;
  for_each_model_word( f, x, limits, [&]( std::uint64_t w ) {
    count += std::popcount( w );
    return true;
  } );
  return count;
}

bool cnf_eval_nondet( const cnf_formula& f, const bit_vector& x, const eval_limits& limits )
{
  bool found = false;
  for_each_model_word( f, x, limits, [&]( std::uint64_t w ) {
    found = w != 0;
    return !found;
  } );
  return found;
}

truth_table cnf_truth_table( const cnf_formula& f, const eval_limits& limits )
{
  if ( f.num_actual > limits.max_inputs )
    throw limit_error( "formula has " + std::to_string( f.num_actual ) + " actual variables, limit is " +
                       std::to_string( limits.max_inputs ) );
  truth_table t( f.num_actual );
  for ( std::uint64_t k = 0; k < t.num_bits(); ++k )
    t.set( k, cnf_eval_nondet( f, bits_of_index( k, f.num_actual ), limits ) );
  return t;
}

/******************************************************************************
 * DIMACS                                                                     *
 ******************************************************************************/

std::string write_dimacs( const cnf_formula& f, const circuit* source )
{
  std::ostringstream os;
  if ( f.num_actual > 0 )
    os << "c actual 1.." << f.num_actual << '\n';
  else
    os << "c actual none\n";
  if ( f.num_guess > 0 )
    os << "c guess " << f.num_actual + 1 << ".." << f.num_variables() << '\n';
  else
    os << "c guess none\n";
  if ( source )
    for ( std::uint32_t k = 0; k < source->size(); ++k )
      os << "c var " << f.num_actual + k + 1 << " = g" << k + 1 << '\n';
  os << "p cnf " << f.num_variables() << ' ' << f.clauses.size() << '\n';
  for ( const auto& clause : f.clauses )
  {
    for ( const auto& lit : clause )
      os << ( lit.positive ? "" : "-" ) << lit.variable << ' ';
    os << "0\n";
  }
  return os.str();
}

cnf_formula read_dimacs( std::string_view text )
{
  std::istringstream is{ std::string( text ) };
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::uint32_t> actual;
  std::optional<std::uint32_t> num_vars;
  std::size_t num_clauses = 0;
  cnf_formula f;
  cnf_clause current;
  while ( std::getline( is, line ) )
  {
    ++line_no;
    std::istringstream ls( line );
    std::string head;
    if ( !( ls >> head ) )
      continue;
    if ( head == "c" )
    {
      std::string key, range;
      if ( ls >> key >> range && key == "actual" )
      {
        if ( range == "none" )
          actual = 0;
        else if ( const auto dots = range.find( ".." ); dots != std::string::npos )
          actual = std::uint32_t( std::stoul( range.substr( dots + 2 ) ) );
      }
      continue;
    }
    if ( head == "p" )
    {
      std::string kind;
      std::uint32_t v = 0;
      if ( !( ls >> kind >> v >> num_clauses ) || kind != "cnf" )
        throw parse_error( line_no, 1, "malformed problem line" );
      num_vars = v;
      continue;
    }
    if ( !num_vars )
      throw parse_error( line_no, 1, "clause before the problem line" );
    ls.clear();
    ls.str( line );
    long long value;
    while ( ls >> value )
    {
      if ( value == 0 )
      {
        f.clauses.push_back( std::move( current ) );
        current.clear();
        continue;
      }
      const auto var = std::uint64_t( value < 0 ? -value : value );
      if ( var > *num_vars )
        throw parse_error( line_no, 1, "variable " + std::to_string( var ) + " out of range" );
      current.push_back( { std::uint32_t( var ), value > 0 } );
    }
    if ( !ls.eof() )
      throw parse_error( line_no, 1, "expected an integer literal" );
  }
  if ( !num_vars )
    throw parse_error( line_no, 1, "missing problem line" );
  if ( !current.empty() )
    throw parse_error( line_no, 1, "unterminated clause" );
  if ( f.clauses.size() != num_clauses )
    throw parse_error( line_no, 1, "expected " + std::to_string( num_clauses ) + " clauses, found " +
                                       std::to_string( f.clauses.size() ) );
  f.num_actual = std::min( actual.value_or( *num_vars ), *num_vars );
  f.num_guess = *num_vars - f.num_actual;
  return f;
}

/******************************************************************************
 * Depth cut                                                                  *
 ******************************************************************************/

namespace
{

std::vector<bool> output_cone( const circuit& c )
{
  std::vector<bool> cone( c.size(), false );
  if ( c.output().is_gate() )
    cone[c.output().index] = true;
  for ( auto k = c.size(); k-- > 0; )
  {
    if ( !cone[k] )
      continue;
    for ( const auto side : { operand_side::left, operand_side::right } )
      if ( const auto op = c.gate_at( std::uint32_t( k ) ).operand( side ); op.is_gate() )
        cone[op.index] = true;
  }
  return cone;
}

/* Longest residual path ending at each gate, and the number of such paths. */
struct path_profile
{
  std::vector<std::size_t> down, up;
  std::vector<double> down_count, up_count;
  std::size_t depth = 0;
};

path_profile profile( const circuit& c, const std::vector<bool>& cone, const std::set<edge>& cut )
{
  const auto s = c.size();
  path_profile p{ std::vector<std::size_t>( s, 0 ), std::vector<std::size_t>( s, 0 ), std::vector<double>( s, 0 ),
                  std::vector<double>( s, 0 ), 0 };
  auto live = [&]( std::uint32_t k, operand_side side ) {
    return c.gate_at( k ).operand( side ).is_gate() && !cut.contains( { k, side } );
  };
  for ( std::uint32_t k = 0; k < s; ++k )
  {
    if ( !cone[k] )
      continue;
    std::size_t best = 0;
    for ( const auto side : { operand_side::left, operand_side::right } )
      if ( live( k, side ) )
        best = std::max( best, p.down[c.gate_at( k ).operand( side ).index] );
    p.down[k] = best + 1;
    if ( best == 0 )
      p.down_count[k] = 1;
    else
      for ( const auto side : { operand_side::left, operand_side::right } )
        if ( live( k, side ) && p.down[c.gate_at( k ).operand( side ).index] == best )
          p.down_count[k] += p.down_count[c.gate_at( k ).operand( side ).index];
    p.depth = std::max( p.depth, p.down[k] );
  }
  for ( auto k = s; k-- > 0; )
  {
    if ( !cone[k] )
      continue;
    if ( p.up[k] == 0 )
    {
      // no live reader: paths end here
      p.up[k] = 1;
      p.up_count[k] = 1;
    }
    for ( const auto side : { operand_side::left, operand_side::right } )
    {
      if ( !live( std::uint32_t( k ), side ) )
        continue;
      const auto u = c.gate_at( std::uint32_t( k ) ).operand( side ).index;
      if ( p.up[k] + 1 > p.up[u] )
      {
        p.up[u] = p.up[k] + 1;
        p.up_count[u] = p.up_count[k];
      }
      else if ( p.up[k] + 1 == p.up[u] )
      {
        p.up_count[u] += p.up_count[k];
      }
    }
  }
  return p;
}

} // namespace

std::size_t residual_depth( const circuit& c, const std::set<edge>& cut )
{
  return profile( c, output_cone( c ), cut ).depth;
}

edge_cut find_depth_cut( const circuit& c, std::uint32_t target_depth )
{
  if ( target_depth < 1 )
    throw precondition_error( "target depth must be at least 1" );
  const auto cone = output_cone( c );
  edge_cut cut{ {}, target_depth };
  while ( true )
  {
    const auto p = profile( c, cone, cut.edges );
    if ( p.depth <= target_depth )
      break;
    std::optional<edge> best;
    double best_paths = 0;
    std::size_t best_split = 0;
    for ( std::uint32_t k = 0; k < c.size(); ++k )
    {
      if ( !cone[k] )
        continue;
      for ( const auto side : { operand_side::left, operand_side::right } )
      {
        const auto op = c.gate_at( k ).operand( side );
        if ( !op.is_gate() || cut.edges.contains( { k, side } ) )
          continue;
        if ( p.down[op.index] + p.up[k] != p.depth )
          continue;
        const double paths = p.down_count[op.index] * p.up_count[k];
        const auto split = std::max( p.down[op.index], p.up[k] );
        if ( !best || paths > best_paths || ( paths == best_paths && split < best_split ) )
        {
          best = edge{ k, side };
          best_paths = paths;
          best_split = split;
        }
      }
    }
    // a path with more than one gate always has a gate-to-gate wire
    cut.edges.insert( *best );
  }
  return cut;
}

/******************************************************************************
 * Formula conversion                                                         *
 ******************************************************************************/

namespace
{

class formula_builder
{
public:
  formula_builder( const circuit& c, const std::set<edge>& cut ) : c_( c )
  {
    std::uint32_t j = 0;
    for ( const auto& e : cut )
      guess_of_.emplace( e, j++ );
  }

  node_ref add( gate_function f, node_ref l, node_ref r )
  {
    gates_.push_back( { f, l, r } );
    return node_ref::gate( std::uint32_t( gates_.size() - 1 ) );
  }

  /* Tree copy of the residual subcircuit of `ref`. */
  node_ref unfold( node_ref ref )
  {
    if ( !ref.is_gate() )
      return ref;
    const auto& g = c_.gate_at( ref.index );
    const auto l = operand( ref.index, operand_side::left, g.left );
    const auto r = operand( ref.index, operand_side::right, g.right );
    return add( g.function, l, r );
  }

  node_ref balanced_and( std::vector<node_ref> items )
  {
    while ( items.size() > 1 )
    {
      std::vector<node_ref> next;
      for ( std::size_t i = 0; i + 1 < items.size(); i += 2 )
        next.push_back( add( fn::AND, items[i], items[i + 1] ) );
      if ( items.size() % 2 )
        next.push_back( items.back() );
      items = std::move( next );
    }
    return items.front();
  }

  std::vector<gate> take() { return std::move( gates_ ); }

private:
  node_ref operand( std::uint32_t k, operand_side side, node_ref ref )
  {
    if ( const auto it = guess_of_.find( { k, side } ); it != guess_of_.end() )
      return node_ref::guess( it->second );
    return unfold( ref );
  }

  const circuit& c_;
  std::map<edge, std::uint32_t> guess_of_;
  std::vector<gate> gates_;
};

} // namespace

circuit formula_convert( const circuit& c, const edge_cut& cut )
{
  if ( c.num_guesses() != 0 )
    throw precondition_error( "formula conversion needs a circuit without guess inputs" );
  for ( const auto& [k, side] : cut.edges )
    if ( k >= c.size() || !c.gate_at( k ).operand( side ).is_gate() )
      throw precondition_error( "cut names g" + std::to_string( k + 1 ) +
                                ( side == operand_side::left ? " left" : " right" ) + ", which is no gate-to-gate wire" );

  formula_builder b( c, cut.edges );
  std::vector<node_ref> conjuncts;
  for ( const auto& [k, side] : cut.edges )
  {
    const auto y = node_ref::guess( std::uint32_t( conjuncts.size() ) );
    conjuncts.push_back( b.add( fn::XNOR, y, b.unfold( c.gate_at( k ).operand( side ) ) ) );
  }
  const auto y_out = node_ref::guess( std::uint32_t( cut.edges.size() ) );
  conjuncts.push_back( b.add( c.output_negated() ? fn::XOR : fn::XNOR, y_out, b.unfold( c.output() ) ) );
  conjuncts.push_back( y_out );
  const auto root = b.balanced_and( std::move( conjuncts ) );
  return circuit( c.name() + "_formula", c.num_inputs(), std::uint32_t( cut.edges.size() + 1 ), basis::b2, b.take(),
                  root );
}

} // namespace ndc
