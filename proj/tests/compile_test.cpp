#include <doctest.h>

#include <random>

#include "ndc/compile.hpp"
#include "ndc/error.hpp"
#include "ndc/eval.hpp"
#include "ndc/fixtures.hpp"
#include "ndc/text_format.hpp"
#include "ndc/transforms.hpp"

using namespace ndc;

namespace
{

/* Scalar model count: one assignment at a time, no word tricks. */
std::uint64_t brute_force_models( const cnf_formula& f, const bit_vector& x )
{
  std::uint64_t count = 0;
  for ( std::uint64_t y = 0; y < ( std::uint64_t( 1 ) << f.num_guess ); ++y )
  {
    auto value = [&]( std::uint32_t v ) {
      return v <= f.num_actual ? bool( x[v - 1] ) : bool( ( y >> ( v - f.num_actual - 1 ) ) & 1u );
    };
    bool all = true;
    for ( const auto& clause : f.clauses )
    {
      bool any = false;
      for ( const auto& lit : clause )
        any |= value( lit.variable ) == lit.positive;
      all &= any;
    }
    count += all;
  }
  return count;
}

truth_table det_table( const circuit& c )
{
  truth_table t( c.num_inputs() );
  for ( std::uint64_t k = 0; k < t.num_bits(); ++k )
    t.set( k, eval_det( c, bits_of_index( k, c.num_inputs() ), {} ) );
  return t;
}

std::vector<std::size_t> gate_fanout( const circuit& c )
{
  std::vector<std::size_t> out( c.size(), 0 );
  for ( const auto& g : c.gates() )
    for ( const auto side : { operand_side::left, operand_side::right } )
      if ( g.operand( side ).is_gate() )
        ++out[g.operand( side ).index];
  return out;
}

circuit random_b2( std::mt19937_64& rng, std::uint32_t max_n, std::uint32_t max_size )
{
  random_circuit_options opt;
  opt.num_inputs = 1 + std::uint32_t( rng() % max_n );
  opt.size = std::uint32_t( rng() % ( max_size + 1 ) );
  opt.basis = basis::b2;
  opt.allow_constants = rng() % 4 == 0;
  opt.allow_degenerate = rng() % 4 == 0;
  return random_circuit( rng, opt );
}

} // namespace

TEST_CASE( "clause templates" )
{
  const auto& t = tseitin_template( fn::AND );
  REQUIRE( t.size() == 3 );
  CHECK( t[0].size() == 2 );
  CHECK( ( t[0][0].position == 0 && !t[0][0].positive && t[0][1].position == 1 && t[0][1].positive ) );
  CHECK( ( t[1][0].position == 0 && !t[1][0].positive && t[1][1].position == 2 && t[1][1].positive ) );
  CHECK( t[2].size() == 3 );

  // every template is exactly z <-> f(a, b)
  for ( unsigned bits = 0; bits < 16; ++bits )
  {
    const gate_function f{ std::uint8_t( bits ) };
    const auto& cl = tseitin_template( f );
    CHECK( cl.size() <= 4 );
    for ( unsigned z = 0; z < 2; ++z )
      for ( unsigned a = 0; a < 2; ++a )
        for ( unsigned b = 0; b < 2; ++b )
        {
          const unsigned v[3] = { z, a, b };
          bool all = true;
          for ( const auto& clause : cl )
          {
            CHECK( clause.size() <= 3 );
            CHECK( clause[0].position == 0 );
            bool any = false;
            for ( const auto& lit : clause )
              any |= ( v[lit.position] == 1 ) == lit.positive;
            all &= any;
          }
          CHECK( all == ( bool( z ) == f( a, b ) ) );
        }
  }
  CHECK( tseitin_template( fn::XOR ).size() == 4 );
  CHECK( tseitin_template( gate_function( 0 ) ).size() == 1 );
}

TEST_CASE( "Tseitin encoding of one AND gate" )
{
  const auto c = parse_circuit( "circuit a inputs=2 guess=0; g1=AND(x1,x2); output g1" );
  const auto f = tseitin_cnf( c );
  CHECK( f.num_actual == 2 );
  CHECK( f.num_guess == 1 );
  const std::vector<cnf_clause> expected{ { { 3, false }, { 1, true } },
                                          { { 3, false }, { 2, true } },
                                          { { 3, true }, { 1, false }, { 2, false } },
                                          { { 3, true } } };
  CHECK( f.clauses == expected );
  CHECK( cnf_truth_table( f ).to_string() == "0001" );
  CHECK( write_dimacs( f, &c ) == "c actual 1..2\nc guess 3..3\nc var 3 = g1\np cnf 3 4\n-3 1 0\n-3 2 0\n3 -1 -2 0\n3 0\n" );
  CHECK( read_dimacs( write_dimacs( f, &c ) ) == f );
}

TEST_CASE( "Tseitin encoding of the parity chain" )
{
  const auto p3 = build_parity_circuit( 3 );
  const auto f = tseitin_cnf( p3 );
  CHECK( f.num_guess == 6 );
  CHECK( f.clauses.size() <= 25 );
  CHECK( f.max_width() <= 3 );
  CHECK( cnf_truth_table( f ) == truth_table::parity( 3 ) );
  CHECK( cnf_eval_nondet( tseitin_cnf( build_parity_circuit( 2 ) ), { false, true } ) );
  CHECK_THROWS_AS( tseitin_cnf( parse_circuit( "circuit g inputs=1 guess=1; g1=AND(x1,y1); output g1" ) ),
                   precondition_error );
}

TEST_CASE( "Tseitin encoding of degenerate outputs" )
{
  const auto one = tseitin_cnf( parse_circuit( "circuit c inputs=2 guess=0; output 1" ) );
  CHECK( one.clauses.empty() );
  CHECK( cnf_truth_table( one ).to_string() == "1111" );
  const auto zero = tseitin_cnf( parse_circuit( "circuit c inputs=2 guess=0; output 0" ) );
  CHECK( zero.num_guess == 0 );
  CHECK( zero.clauses == std::vector<cnf_clause>{ {} } );
  CHECK( read_dimacs( write_dimacs( zero ) ) == zero );
  CHECK( cnf_truth_table( zero ).to_string() == "0000" );
  const auto neg = tseitin_cnf( parse_circuit( "circuit c inputs=2 guess=0; output !x2" ) );
  CHECK( cnf_truth_table( neg ).to_string() == "1010" );
  const auto consts = parse_circuit( "circuit c inputs=1 guess=0; g1=AND(x1,1); g2=OR(g1,0); g3=NAND(g2,g2); output g3" );
  CHECK( cnf_truth_table( tseitin_cnf( consts ) ) == det_table( consts ) );
}

TEST_CASE( "CNF evaluation" )
{
  cnf_formula unit{ 1, 0, { { { 1, true } } } };
  CHECK( cnf_eval_nondet( unit, { true } ) );
  CHECK_FALSE( cnf_eval_nondet( unit, { false } ) );
  cnf_formula contradiction{ 1, 1, { { { 2, true } }, { { 2, false } } } };
  CHECK_FALSE( cnf_eval_nondet( contradiction, { false } ) );
  CHECK_FALSE( cnf_eval_nondet( contradiction, { true } ) );
  cnf_formula free{ 0, 3, {} };
  CHECK( cnf_count_models( free, {} ) == 8 );
  cnf_formula big{ 0, 30, {} };
  CHECK_THROWS_AS( cnf_eval_nondet( big, {} ), limit_error );
  CHECK_THROWS_AS( cnf_eval_nondet( unit, {} ), precondition_error );
}

TEST_CASE( "DIMACS reading" )
{
  const auto f = read_dimacs( "c plain\np cnf 3 2\n1 -2\n 0 3 0\n" );
  CHECK( f.num_actual == 3 );
  CHECK( f.num_guess == 0 );
  CHECK( f.clauses.size() == 2 );
  CHECK_THROWS_AS( read_dimacs( "p cnf 2 1\n3 0\n" ), parse_error );
  CHECK_THROWS_AS( read_dimacs( "p cnf 2 2\n1 0\n" ), parse_error );
  CHECK_THROWS_AS( read_dimacs( "1 0\n" ), parse_error );
  CHECK_THROWS_AS( read_dimacs( "p cnf 2 1\n1 x 0\n" ), parse_error );
}

TEST_CASE( "property: Tseitin CNF agrees with the circuit and has a unique witness" )
{
  std::mt19937_64 rng( 3 );
  for ( int trial = 0; trial < 150; ++trial )
  {
    const auto c = random_b2( rng, 5, 10 );
    const auto f = tseitin_cnf( c );
    CHECK( f.clauses.size() <= 4 * c.size() + 1 );
    CHECK( f.max_width() <= 3 );
    CHECK( f.num_guess == c.size() );
    for ( std::uint64_t k = 0; k < ( std::uint64_t( 1 ) << c.num_inputs() ); ++k )
    {
      const auto x = bits_of_index( k, c.num_inputs() );
      const auto models = cnf_count_models( f, x );
      CHECK( models == brute_force_models( f, x ) );
      CHECK( ( models > 0 ) == eval_det( c, x, {} ) );
      CHECK( models <= 1 );
      CHECK( cnf_eval_nondet( f, x ) == ( models > 0 ) );
    }
    CHECK( read_dimacs( write_dimacs( f, &c ) ) == f );
  }
}

TEST_CASE( "property: the satisfying guesses are the gate values" )
{
  std::mt19937_64 rng( 8 );
  for ( int trial = 0; trial < 60; ++trial )
  {
    const auto c = random_b2( rng, 4, 8 );
    if ( c.size() == 0 )
      continue;
    const auto f = tseitin_cnf( c );
    for ( std::uint64_t k = 0; k < ( std::uint64_t( 1 ) << c.num_inputs() ); ++k )
    {
      const auto x = bits_of_index( k, c.num_inputs() );
      if ( !eval_det( c, x, {} ) )
        continue;
      const auto values = gate_values( c, x, {} );
      cnf_formula pinned = f;
      for ( std::uint32_t g = 0; g < c.size(); ++g )
        pinned.clauses.push_back( { cnf_literal{ f.num_actual + g + 1, bool( values[g] ) } } );
      CHECK( cnf_count_models( pinned, x ) == 1 );
    }
  }
}

TEST_CASE( "depth cut examples" )
{
  const auto chain = parse_circuit(
      "circuit chain inputs=2 guess=0; g1=AND(x1,x2); g2=OR(g1,x1); g3=AND(g2,x2); g4=OR(g3,x1); output g4" );
  CHECK( residual_depth( chain, {} ) == 4 );
  const auto cut = find_depth_cut( chain, 2 );
  CHECK( cut.edges == std::set<edge>{ { 2, operand_side::left } } );
  CHECK( residual_depth( chain, cut.edges ) <= 2 );

  CHECK( find_depth_cut( chain, 4 ).edges.empty() );

  const auto tree = parse_circuit( "circuit tree inputs=4 guess=0; g1=AND(x1,x2); g2=OR(x3,x4); g3=AND(x1,x3); "
                                   "g4=OR(x2,x4); g5=AND(g1,g2); g6=OR(g3,g4); g7=AND(g5,g6); output g7" );
  CHECK( residual_depth( tree, {} ) == 3 );
  const auto all = find_depth_cut( tree, 1 );
  CHECK( all.edges.size() == 6 );
  CHECK( residual_depth( tree, all.edges ) == 1 );

  CHECK_THROWS_AS( find_depth_cut( chain, 0 ), precondition_error );
  // gates outside the output cone do not count
  const auto dead = parse_circuit( "circuit d inputs=1 guess=0; g1=AND(x1,x1); g2=AND(g1,g1); g3=OR(x1,x1); output g3" );
  CHECK( residual_depth( dead, {} ) == 1 );
}

TEST_CASE( "formula conversion examples" )
{
  const auto c = parse_circuit( "circuit a inputs=2 guess=0; g1=AND(x1,x2); output g1" );
  const auto f = formula_convert( c, { {}, 1 } );
  CHECK( f.num_guesses() == 1 );
  CHECK( f.basis() == basis::b2 );
  CHECK( emit_circuit_inline( f ) ==
         "circuit a_formula inputs=2 guess=1 basis B2; g1 = AND(x1, x2); g2 = XNOR(y1, g1); g3 = AND(g2, y1); output g3" );
  CHECK( nondet_truth_table( f ).to_string() == "0001" );

  const auto p3 = build_parity_circuit( 3 );
  const auto p3f = formula_convert( p3, { { { 3, operand_side::left } }, 2 } );
  CHECK( p3f.num_guesses() == 2 );
  CHECK( nondet_truth_table( p3f ) == truth_table::parity( 3 ) );
  for ( auto fo : gate_fanout( p3f ) )
    CHECK( fo <= 1 );

  CHECK_THROWS_AS( formula_convert( p3, { { { 0, operand_side::left } }, 1 } ), precondition_error );
  CHECK_THROWS_AS( formula_convert( p3, { { { 9, operand_side::left } }, 1 } ), precondition_error );

  const auto neg = parse_circuit( "circuit n inputs=2 guess=0; output !x1" );
  CHECK( nondet_truth_table( formula_convert( neg, { {}, 1 } ) ).to_string() == "1100" );
}

TEST_CASE( "property: cut and convert preserve the function" )
{
  std::mt19937_64 rng( 17 );
  for ( int trial = 0; trial < 80; ++trial )
  {
    const auto c = random_b2( rng, 5, 10 );
    const std::uint32_t target = 1 + std::uint32_t( rng() % 3 );
    const auto cut = find_depth_cut( c, target );
    const auto depth = residual_depth( c, cut.edges );
    CHECK( depth <= target );
    const auto f = formula_convert( c, cut );
    CHECK( f.num_guesses() == cut.edges.size() + 1 );
    for ( auto fo : gate_fanout( f ) )
      CHECK( fo <= 1 );
    CHECK( nondet_truth_table( f ) == det_table( c ) );
    // every checker is one XNOR over a tree of at most 2^depth - 1 gates
    CHECK( f.size() <= ( cut.edges.size() + 1 ) * ( std::size_t( 1 ) << depth ) + cut.edges.size() + 1 );
  }
}
