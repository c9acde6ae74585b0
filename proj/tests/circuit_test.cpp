#include <doctest.h>

#include <random>

#include "ndc/error.hpp"
#include "ndc/eval.hpp"
#include "ndc/fixtures.hpp"
#include "ndc/text_format.hpp"

using namespace ndc;

namespace
{

const char* parity2_text = "circuit p2 inputs=2 guess=0\n"
                           "g1=ANDNY(x1,x2)\n"
                           "g2=ANDNX(x1,x2)\n"
                           "g3=OR(g1,g2)\n"
                           "output g3\n";

} // namespace

TEST_CASE( "parse the three-gate XOR" )
{
  const auto c = parse_circuit( parity2_text );
  CHECK( c.name() == "p2" );
  CHECK( c.num_inputs() == 2 );
  CHECK( c.num_guesses() == 0 );
  CHECK( c.basis() == basis::u2 );
  const auto m = metrics( c );
  CHECK( m.size == 3 );
  CHECK( m.depth == 2 );
  CHECK( m.fanout.at( node_ref::actual( 0 ) ) == 2 );
  CHECK( m.fanout.at( node_ref::gate( 2 ) ) == 1 );
  CHECK( nondet_truth_table( c ).to_string() == "0110" );
}

TEST_CASE( "parse a mixed circuit and the inline form" )
{
  const auto c = parse_circuit( "circuit c inputs=1 guess=1; g1=AND(x1,y1); output g1" );
  CHECK( c.num_inputs() == 1 );
  CHECK( c.num_guesses() == 1 );
  CHECK( c.size() == 1 );
  CHECK( eval_det( c, { true }, { false } ) == false );
  CHECK( eval_det( c, { true }, { true } ) == true );
  CHECK( eval_nondet( c, { true } ) == true );
  CHECK( eval_nondet( c, { false } ) == false );
  CHECK( nondet_truth_table( c ).to_string() == "01" );
}

TEST_CASE( "parse errors" )
{
  SUBCASE( "XOR under U2" )
  {
    try
    {
      parse_circuit( "circuit bad inputs=1 guess=0\ng1=XOR(x1,x1)\noutput g1\n" );
      FAIL( "expected a parse error" );
    }
    catch ( const parse_error& e )
    {
      CHECK( e.line() == 2 );
      CHECK( e.column() == 4 );
    }
  }
  SUBCASE( "XOR under B2 is fine" )
  {
    const auto c = parse_circuit( "circuit ok inputs=2 guess=0 basis B2\ng1=XOR(x1,x2)\noutput g1\n" );
    CHECK( nondet_truth_table( c ).to_string() == "0110" );
  }
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1,g9)\noutput g1" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1,x2)\noutput g1" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1,y1)\noutput g1" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1,g2)\ng2=OR(g1,x1)\noutput g2" ),
                   parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1)\noutput g1" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1,x1,x1)\noutput g1" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=MUX(x1,x1)\noutput g1" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1,x1)\n" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "g1=AND(x1,x1)\noutput g1" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1,x1)\ng1=OR(x1,x1)\noutput g1" ),
                   parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1,x1)\noutput !g1" ), parse_error );
  CHECK_THROWS_AS( parse_circuit( "circuit c inputs=1 guess=0\ng1=AND(x1 x1)\noutput g1" ), parse_error );
}

TEST_CASE( "syntax error reports line and column" )
{
  try
  {
    parse_circuit( "# header follows\ncircuit c inputs=2 guess=0\ng1 = AND(x1, x2\noutput g1\n" );
    FAIL( "expected a parse error" );
  }
  catch ( const parse_error& e )
  {
    CHECK( e.line() == 3 );
    CHECK( e.column() == 16 );
  }
}

TEST_CASE( "gates out of textual order are sorted topologically" )
{
  const auto c = parse_circuit( "circuit c inputs=2 guess=0\nout=OR(a,b)\na=ANDNY(x1,x2)\nb=ANDNX(x1,x2)\noutput out" );
  CHECK( c.gate_at( 2 ).function == fn::OR );
  CHECK( c.output() == node_ref::gate( 2 ) );
  CHECK( nondet_truth_table( c ).to_string() == "0110" );
}

TEST_CASE( "constant and projection outputs" )
{
  const auto one = parse_circuit( "circuit k inputs=2 guess=1\noutput 1" );
  for ( std::uint64_t x = 0; x < 4; ++x )
    for ( int y = 0; y < 2; ++y )
      CHECK( eval_det( one, bits_of_index( x, 2 ), { bool( y ) } ) );
  const auto zero = parse_circuit( "circuit k inputs=0 guess=0\noutput 0" );
  const auto m = metrics( zero );
  CHECK( m.size == 0 );
  CHECK( m.depth == 0 );
  CHECK( parse_circuit( "circuit p inputs=1 guess=0\noutput x1" ) == circuit( "p", 1, 0, basis::u2, {}, node_ref::actual( 0 ) ) );
  CHECK( nondet_truth_table( parse_circuit( "circuit p inputs=1 guess=0\noutput x1" ) ).to_string() == "01" );
  CHECK( nondet_truth_table( parse_circuit( "circuit p inputs=1 guess=0\noutput !x1" ) ).to_string() == "10" );
}

TEST_CASE( "guesses can always accept" )
{
  const auto c = parse_circuit( "circuit g inputs=1 guess=2\ng1=AND(y1,y2)\noutput g1" );
  CHECK( nondet_truth_table( c ).to_string() == "11" );
  const auto single = parse_circuit( "circuit s inputs=1 guess=0\ng1=AND(x1,x1)\noutput g1" );
  const auto m = metrics( single );
  CHECK( m.size == 1 );
  CHECK( m.depth == 1 );
}

TEST_CASE( "length mismatch and guess limit" )
{
  const auto c = parse_circuit( "circuit c inputs=1 guess=1; g1=AND(x1,y1); output g1" );
  CHECK_THROWS_AS( eval_det( c, { true, false }, { true } ), precondition_error );
  CHECK_THROWS_AS( eval_det( c, { true }, {} ), precondition_error );
  eval_limits tight;
  tight.max_guesses = 0;
  CHECK_THROWS_AS( eval_nondet( c, { true }, tight ), limit_error );
}

TEST_CASE( "many guesses use several words" )
{
  // accepts iff the 9 guesses can be set so all of them are 1 and x1 = 1
  std::string text = "circuit wide inputs=1 guess=9\ng1=AND(y1,y2)\n";
  for ( int j = 3; j <= 9; ++j )
    text += "g" + std::to_string( j - 1 ) + "=AND(g" + std::to_string( j - 2 ) + ",y" + std::to_string( j ) + ")\n";
  text += "g9=AND(g8,x1)\noutput g9\n";
  const auto c = parse_circuit( text );
  CHECK( nondet_truth_table( c ).to_string() == "01" );
  const auto joint = joint_truth_table( c );
  CHECK( joint.count_ones() == 1 );
  CHECK( joint.get( ( 1u << 9 ) | 0x1FF ) );
}

TEST_CASE( "property: deterministic circuits agree under both semantics" )
{
  std::mt19937_64 rng( 7 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    random_circuit_options opt;
    opt.num_inputs = 1 + rng() % 4;
    opt.num_guesses = 0;
    opt.size = rng() % 8;
    opt.basis = trial % 2 ? basis::b2 : basis::u2;
    const auto c = random_circuit( rng, opt );
    for ( std::uint64_t x = 0; x < ( 1u << c.num_inputs() ); ++x )
      CHECK( eval_nondet_index( c, x ) == eval_det( c, bits_of_index( x, c.num_inputs() ), {} ) );
  }
}

TEST_CASE( "property: unused guess inputs do not change the function" )
{
  std::mt19937_64 rng( 11 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    random_circuit_options opt;
    opt.num_inputs = 1 + rng() % 3;
    opt.num_guesses = rng() % 4;
    opt.size = 1 + rng() % 7;
    const auto c = random_circuit( rng, opt );
    const circuit padded( c.name(), c.num_inputs(), c.num_guesses() + 2, c.basis(), c.gates(), c.output(),
                          c.output_negated() );
    CHECK( nondet_truth_table( padded ) == nondet_truth_table( c ) );
  }
}

TEST_CASE( "property: emit then parse is the identity" )
{
  std::mt19937_64 rng( 3 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    random_circuit_options opt;
    opt.num_inputs = rng() % 5;
    opt.num_guesses = rng() % 4;
    opt.size = rng() % 9;
    opt.allow_constants = true;
    opt.allow_degenerate = trial % 3 == 0;
    opt.basis = trial % 2 ? basis::b2 : basis::u2;
    const auto c = random_circuit( rng, opt );
    CHECK( parse_circuit( emit_circuit( c ) ) == c );
    CHECK( parse_circuit( emit_circuit_inline( c ) ) == c );
  }
}
