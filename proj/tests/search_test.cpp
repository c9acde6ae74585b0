#include <doctest.h>

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <map>
#include <set>

#include "ndc/error.hpp"
#include "ndc/eval.hpp"
#include "ndc/fixtures.hpp"
#include "ndc/search.hpp"
#include "ndc/text_format.hpp"

using namespace ndc;

namespace
{

using table_set = std::set<std::string>;

table_set canonical_tables( std::uint32_t n, std::uint32_t s, search_mode mode )
{
  table_set out;
  enumerate_canonical( n, s, mode, [&]( const circuit& c ) {
    out.insert( nondet_truth_table( c ).to_string() );
    return true;
  } );
  return out;
}

/* Every U2 table (degenerate ones too), every operand, m = 2s guesses, any node as output. */
table_set naive_tables( std::uint32_t n, std::uint32_t s, search_mode mode )
{
  const std::uint32_t m = mode == search_mode::nondeterministic ? 2 * s + ( s == 0 ) : 0;
  std::vector<gate_function> functions;
  for ( unsigned t = 0; t < 16; ++t )
    if ( gate_function( std::uint8_t( t ) ).is_u2() )
      functions.emplace_back( std::uint8_t( t ) );
  std::vector<node_ref> base{ node_ref::constant( false ), node_ref::constant( true ) };
  for ( std::uint32_t i = 0; i < n; ++i )
    base.push_back( node_ref::actual( i ) );
  for ( std::uint32_t j = 0; j < m; ++j )
    base.push_back( node_ref::guess( j ) );

  table_set out;
  std::vector<gate> gates;
  std::function<void( std::uint32_t )> rec = [&]( std::uint32_t k ) {
    auto pool = base;
    for ( std::uint32_t g = 0; g < k; ++g )
      pool.push_back( node_ref::gate( g ) );
    for ( const auto& ref : pool )
      for ( bool neg : { false, true } )
      {
        if ( neg && !ref.is_actual() )
          continue;
        out.insert( nondet_truth_table( circuit( "naive", n, m, basis::u2, gates, ref, neg ) ).to_string() );
      }
    if ( k == s )
      return;
    for ( auto f : functions )
      for ( auto l : pool )
        for ( auto r : pool )
        {
          gates.push_back( { f, l, r } );
          rec( k + 1 );
          gates.pop_back();
        }
  };
  rec( 0 );
  return out;
}

/* Smallest canonical size of every table reachable with at most `s_max` gates. */
std::map<std::string, std::uint32_t> canonical_min_sizes( std::uint32_t n, std::uint32_t s_max, search_mode mode )
{
  std::map<std::string, std::uint32_t> out;
  for ( std::uint32_t s = 0; s <= s_max; ++s )
    for ( const auto& t : canonical_tables( n, s, mode ) )
      out.emplace( t, s );
  return out;
}

std::size_t witness_size( const search_certificate& c )
{
  REQUIRE( c.witness );
  return c.witness->size();
}

truth_table table_of( std::uint32_t n, unsigned bits )
{
  truth_table t( n );
  for ( std::uint64_t k = 0; k < t.num_bits(); ++k )
    t.set( k, ( bits >> k ) & 1u );
  return t;
}

std::string temp_path( const std::string& name )
{
  const auto p = std::filesystem::temp_directory_path() / ( "ndc_" + name + "_" + std::to_string( ::getpid() ) );
  std::filesystem::remove( p );
  return p.string();
}

} // namespace

TEST_CASE( "canonical enumeration counts" )
{
  auto count = []( std::uint32_t n, std::uint32_t s, search_mode mode ) {
    return enumerate_canonical( n, s, mode, []( const circuit& ) { return true; } );
  };
  CHECK( count( 1, 0, search_mode::deterministic ) == 4 );
  CHECK( count( 1, 0, search_mode::nondeterministic ) == 5 );
  // symmetric: 4 x 6 unordered pairs over {0,1,x1}; others: 4 x 9 ordered pairs
  CHECK( count( 1, 1, search_mode::deterministic ) == 60 );
  // 4 x 10 + 4 x 16 over {0,1,x1,x2}
  CHECK( count( 2, 1, search_mode::deterministic ) == 104 );
  // left in {0,1,x1}: 4 right choices {0,1,x1,y1}; left y1: 5 choices {0,1,x1,y1,y2}
  // symmetric: 9 pairs with left < y1 plus (y1,y1), (y1,y2); others: 3 x 4 + 5
  CHECK( count( 1, 1, search_mode::nondeterministic ) == 4 * 11 + 4 * 17 );

  std::uint64_t seen = 0;
  const auto stopped = enumerate_canonical( 2, 2, search_mode::deterministic, [&]( const circuit& ) {
    return ++seen < 10;
  } );
  CHECK( stopped == 10 );
  CHECK_THROWS_AS( count( 1, 7, search_mode::deterministic ), limit_error );
}

TEST_CASE( "canonical circuits have the promised shape" )
{
  enumerate_canonical( 2, 3, search_mode::nondeterministic, [&]( const circuit& c ) {
    CHECK( c.output() == node_ref::gate( 2 ) );
    std::vector<int> readers( c.size(), 0 );
    std::uint32_t next_guess = 0;
    for ( const auto& g : c.gates() )
    {
      CHECK( g.function.is_nondegenerate_u2() );
      for ( const auto side : { operand_side::left, operand_side::right } )
      {
        const auto op = g.operand( side );
        if ( op.is_gate() )
          ++readers[op.index];
        if ( op.is_guess() )
        {
          CHECK( op.index <= next_guess );
          next_guess = std::max( next_guess, op.index + 1 );
        }
      }
    }
    CHECK( readers[0] > 0 );
    CHECK( readers[1] > 0 );
    CHECK( c.num_guesses() == next_guess );
    return true;
  } );
}

TEST_CASE( "property: canonical enumeration is complete at tiny scale" )
{
  for ( std::uint32_t s = 0; s <= 2; ++s )
  {
    table_set canonical;
    for ( std::uint32_t t = 0; t <= s; ++t )
      canonical.merge( canonical_tables( 1, t, search_mode::nondeterministic ) );
    CHECK( canonical == naive_tables( 1, s, search_mode::nondeterministic ) );
  }
  for ( std::uint32_t s = 0; s <= 2; ++s )
  {
    table_set canonical;
    for ( std::uint32_t t = 0; t <= s; ++t )
      canonical.merge( canonical_tables( 2, t, search_mode::deterministic ) );
    CHECK( canonical == naive_tables( 2, s, search_mode::deterministic ) );
  }
}

TEST_CASE( "property: achievable tables are nested by size" )
{
  for ( const auto mode : { search_mode::deterministic, search_mode::nondeterministic } )
  {
    const std::uint32_t n = mode == search_mode::deterministic ? 2 : 1;
    auto previous = canonical_tables( n, 0, mode );
    for ( std::uint32_t s = 1; s <= 2; ++s )
    {
      const auto current = canonical_tables( n, s, mode );
      CHECK( std::includes( current.begin(), current.end(), previous.begin(), previous.end() ) );
      previous = current;
    }
  }
}

TEST_CASE( "size search examples" )
{
  const auto p2 = min_size_det( truth_table::parity( 2 ), 4 );
  CHECK( witness_size( p2 ) == 3 );
  CHECK( p2.exhaustive );
  CHECK( p2.examined_by_size.size() == 4 );
  CHECK( nondet_truth_table( *p2.witness ) == truth_table::parity( 2 ) );

  const auto conj = min_size_det( truth_table::from_string( "0001" ), 3 );
  CHECK( witness_size( conj ) == 1 );

  const auto n2 = min_size_nondet( truth_table::parity( 2 ), 3 );
  CHECK( witness_size( n2 ) == 3 );
  CHECK( n2.exhaustive );
  CHECK( n2.m_bound == 6 );

  const auto none = min_size_nondet( truth_table::parity( 2 ), 2 );
  CHECK_FALSE( none.witness );
  CHECK( none.exhaustive );
  CHECK( none.m_bound == 4 );
  CHECK( none.serialize() ==
         "target=0110 mode=ndet s_max=2 m_bound=4 exhaustive=true examined=" + std::to_string( none.examined ) +
             " witness=NONE" );

  const auto proj = min_size_nondet( truth_table::projection( 2, 0 ), 2 );
  CHECK( witness_size( proj ) == 0 );
  CHECK( proj.witness->output() == node_ref::actual( 0 ) );
  const auto one = min_size_nondet( truth_table::constant( 2, true ), 2 );
  CHECK( witness_size( one ) == 0 );

  CHECK_THROWS_AS( min_size_det( truth_table::parity( 5 ), 3 ), limit_error );
  CHECK_THROWS_AS( min_size_nondet( truth_table::parity( 4 ), 3 ), limit_error );
  CHECK_THROWS_AS( min_size_det( truth_table::parity( 2 ), 7 ), limit_error );
}

TEST_CASE( "deterministic Parity_3 needs six gates" )
{
  const auto c = min_size_det( truth_table::parity( 3 ), 6 );
  CHECK( witness_size( c ) == 6 );
  CHECK( c.exhaustive );
  CHECK( c.examined_by_size.size() == 7 );
  CHECK( nondet_truth_table( *c.witness ) == truth_table::parity( 3 ) );
}

TEST_CASE( "property: the size engine agrees with canonical enumeration" )
{
  struct scope
  {
    std::uint32_t n, s_max;
    search_mode mode;
  };
  for ( const auto& [n, s_max, mode] : { scope{ 1, 3, search_mode::nondeterministic },
                                         scope{ 2, 3, search_mode::deterministic },
                                         scope{ 2, 3, search_mode::nondeterministic },
                                         scope{ 3, 3, search_mode::deterministic },
                                         scope{ 3, 3, search_mode::nondeterministic } } )
  {
    const auto expected = canonical_min_sizes( n, s_max, mode );
    for ( unsigned bits = 0; bits < ( 1u << ( 1u << n ) ); ++bits )
    {
      const auto target = table_of( n, bits );
      const auto cert = min_size( target, mode, s_max );
      CHECK( cert.exhaustive );
      const auto it = expected.find( target.to_string() );
      if ( it == expected.end() )
      {
        CHECK_FALSE( cert.witness );
        continue;
      }
      REQUIRE( cert.witness );
      CHECK( cert.witness->size() == it->second );
      CHECK( nondet_truth_table( *cert.witness ) == target );
    }
  }
}

TEST_CASE( "property: the size engine never misses a known circuit" )
{
  // any circuit is an upper bound on the minimum size of its own function
  std::mt19937_64 rng( 11 );
  for ( int trial = 0; trial < 240; ++trial )
  {
    random_circuit_options opt;
    const bool wide = trial % 3 == 0;
    opt.num_inputs = wide ? 3 : 2;
    opt.num_guesses = std::uint32_t( rng() % 5 );
    opt.size = 1 + std::uint32_t( rng() % ( wide ? 4 : 5 ) );
    opt.allow_constants = trial % 4 == 0;
    opt.allow_degenerate = trial % 5 == 0;
    const auto c = random_circuit( rng, opt );
    const auto target = nondet_truth_table( c );
    const auto s = std::uint32_t( c.size() );
    const auto ndet = min_size_nondet( target, s );
    REQUIRE( ndet.witness );
    CHECK( ndet.witness->size() <= s );
    CHECK( nondet_truth_table( *ndet.witness ) == target );
    if ( opt.num_guesses == 0 )
    {
      const auto det = min_size_det( target, s );
      REQUIRE( det.witness );
      CHECK( det.witness->size() <= s );
      CHECK( det.witness->num_guesses() == 0 );
    }
  }
}

TEST_CASE( "property: nondeterminism never needs more gates" )
{
  for ( unsigned bits = 0; bits < 16; ++bits )
  {
    const auto target = table_of( 2, bits );
    const auto det = min_size_det( target, 4 );
    const auto ndet = min_size_nondet( target, 4 );
    REQUIRE( det.witness );
    REQUIRE( ndet.witness );
    CHECK( ndet.witness->size() <= det.witness->size() );
  }
  for ( unsigned bits : { 0x96u, 0x17u, 0xE8u, 0x80u, 0x7Fu, 0x1u } )
  {
    const auto target = table_of( 3, bits );
    const auto det = min_size_det( target, 6 );
    const auto ndet = min_size_nondet( target, 3 );
    if ( det.witness && ndet.witness )
      CHECK( ndet.witness->size() <= det.witness->size() );
    if ( det.witness && !ndet.witness )
      CHECK( det.witness->size() > 3 );
  }
}

TEST_CASE( "search counts are reproducible and independent of workers" )
{
  const auto target = truth_table::from_string( "01101000" );
  const auto a = min_size_nondet( target, 3 );
  const auto b = min_size_nondet( target, 3 );
  search_options threads;
  threads.workers = 3;
  const auto c = min_size_nondet( target, 3, threads );
  CHECK( a.serialize() == b.serialize() );
  CHECK( a.serialize() == c.serialize() );
  CHECK( a.examined_by_size == c.examined_by_size );
}

TEST_CASE( "interrupted searches resume from the checkpoint" )
{
  const auto target = truth_table::parity( 3 );
  const auto full = min_size_nondet( target, 3 );
  REQUIRE( full.exhaustive );
  REQUIRE_FALSE( full.witness );

  const auto path = temp_path( "resume" );
  search_options partial;
  partial.checkpoint = path;
  partial.partition_budget = 4;
  const auto first = min_size_nondet( target, 3, partial );
  CHECK_FALSE( first.exhaustive );
  CHECK( first.examined < full.examined );

  search_options resume;
  resume.checkpoint = path;
  const auto second = min_size_nondet( target, 3, resume );
  CHECK( second.exhaustive );
  CHECK( second.serialize() == full.serialize() );

  // a checkpoint is bound to the search that wrote it
  CHECK_THROWS_AS( min_size_det( target, 3, resume ), precondition_error );
  std::filesystem::remove( path );
}

TEST_CASE( "parity tightness for two inputs" )
{
  const auto r = verify_parity_tightness( 2, false );
  CHECK( r.tight );
  CHECK( r.lower_bound == 3 );
  CHECK( r.upper_bound == 3 );
  CHECK( r.lower.s_max == 2 );
  CHECK( r.lower.m_bound == 4 );
  CHECK( r.lower.exhaustive );
  CHECK_FALSE( r.lower.witness );
  CHECK( r.upper.size() == 3 );
  const auto text = r.serialize();
  CHECK( text.starts_with( "role=lower target=0110 mode=ndet s_max=2 m_bound=4 exhaustive=true" ) );
  CHECK( text.find( "role=upper target=0110 mode=ndet s_max=3" ) != std::string::npos );

  CHECK_THROWS_AS( verify_parity_tightness( 3, false ), precondition_error );
  CHECK_THROWS_AS( verify_parity_tightness( 4, true ), precondition_error );
}
