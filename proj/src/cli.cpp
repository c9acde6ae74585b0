#include "ndc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "ndc/compile.hpp"
#include "ndc/error.hpp"
#include "ndc/eval.hpp"
#include "ndc/fixtures.hpp"
#include "ndc/search.hpp"
#include "ndc/text_format.hpp"
#include "ndc/transforms.hpp"

namespace ndc::cli
{

namespace
{

/* Unreadable or unwritable file: reported as a usage error. */
class io_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/* Requested check failed: exit code 1 with the message on standard error. */
class violation : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw io_error( "cannot read " + path );
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file( const std::string& path, const std::string& text, command_outcome& out )
{
  std::ofstream f( path, std::ios::binary );
  f << text;
  if ( !f )
    throw io_error( "cannot write " + path );
  out.artifacts.push_back( path );
}

circuit load_circuit( const std::string& path )
{
  const auto text = read_file( path );
  try
  {
    return parse_circuit( text );
  }
  catch ( const parse_error& e )
  {
    throw parse_error( e.line(), e.column(), std::string( e.what() ).substr( std::string( e.what() ).find( ": " ) + 2 ) +
                                                 " (in " + path + ")" );
  }
}

bit_vector parse_bits( const std::string& text, std::size_t expected, const std::string& what )
{
  if ( text.size() != expected || text.find_first_not_of( "01" ) != std::string::npos )
    throw precondition_error( what + " must be " + std::to_string( expected ) + " binary digits, got '" + text + "'" );
  bit_vector out;
  for ( char ch : text )
    out.push_back( ch == '1' );
  return out;
}

/* Bit strings, or parity<k> for k >= 1. */
truth_table parse_table( const std::string& text )
{
  if ( text.rfind( "parity", 0 ) == 0 )
  {
    const auto arity = text.substr( 6 );
    if ( arity.empty() || arity.find_first_not_of( "0123456789" ) != std::string::npos || arity.size() > 2 )
      throw precondition_error( "bad table name '" + text + "'" );
    return truth_table::parity( std::uint32_t( std::stoul( arity ) ) );
  }
  return truth_table::from_string( text );
}

std::string side_name( operand_side side )
{
  return side == operand_side::left ? "left" : "right";
}

std::string format_cut( const std::set<edge>& cut )
{
  std::string out;
  for ( const auto& [k, side] : cut )
    out += ( out.empty() ? "" : "," ) + std::string( "g" ) + std::to_string( k + 1 ) + "." + side_name( side );
  return out.empty() ? "none" : out;
}

/* `g4.left,g5.right`, `none`, or a file holding such a line (a `cut=` prefix is accepted). */
std::set<edge> parse_cut( std::string text )
{
  if ( std::ifstream probe( text ); probe && text != "none" )
    text = read_file( text );
  text.erase( std::remove_if( text.begin(), text.end(), []( char ch ) { return std::isspace( (unsigned char)ch ); } ),
              text.end() );
  if ( text.rfind( "cut=", 0 ) == 0 )
    text = text.substr( 4 );
  std::set<edge> cut;
  if ( text.empty() || text == "none" )
    return cut;
  std::istringstream is( text );
  std::string item;
  while ( std::getline( is, item, ',' ) )
  {
    const auto dot = item.find( '.' );
    if ( item.size() < 2 || item[0] != 'g' || dot == std::string::npos ||
         item.substr( 1, dot - 1 ).find_first_not_of( "0123456789" ) != std::string::npos || dot == 1 )
      throw precondition_error( "bad cut edge '" + item + "', expected g<k>.left or g<k>.right" );
    const auto k = std::uint32_t( std::stoul( item.substr( 1, dot - 1 ) ) );
    const auto side = item.substr( dot + 1 );
    if ( k == 0 || ( side != "left" && side != "right" ) )
      throw precondition_error( "bad cut edge '" + item + "', expected g<k>.left or g<k>.right" );
    cut.insert( { k - 1, side == "left" ? operand_side::left : operand_side::right } );
  }
  return cut;
}

/* Circuit text to standard output or to `out_path`, with trailing comment lines. */
void deliver_circuit( const circuit& c, const std::vector<std::string>& notes, const std::string& out_path,
                      command_outcome& out )
{
  std::string text = emit_circuit( c );
  for ( const auto& n : notes )
    text += "# " + n + "\n";
  if ( out_path.empty() )
    out.report += text;
  else
  {
    write_file( out_path, text, out );
    for ( const auto& n : notes )
      out.report += n + "\n";
    out.report += "wrote " + out_path + "\n";
  }
}

std::string bits_string( const std::vector<std::uint32_t>& gates )
{
  std::string s = "[";
  for ( std::size_t i = 0; i < gates.size(); ++i )
    s += ( i ? "," : "" ) + std::string( "g" ) + std::to_string( gates[i] + 1 );
  return s + "]";
}

struct settings
{
  std::string circuit_path, out_path, cnf_path, x, y, table, cut, cert_path, checkpoint;
  bool det = false, nondet = false, long_run = false, value = false;
  std::uint32_t n = 0, input = 0, target = 0, smax = 0, workers = 1, count = 200, max_guesses = 24,
                hard_limit = 6;
  std::optional<std::uint32_t> m_bound;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
};

eval_limits limits_of( const settings& s )
{
  eval_limits l;
  l.max_guesses = s.max_guesses;
  return l;
}

search_options search_options_of( const settings& s )
{
  search_options o;
  o.hard_limit = s.hard_limit;
  o.m_bound = s.m_bound;
  o.workers = s.workers;
  if ( !s.checkpoint.empty() )
    o.checkpoint = s.checkpoint;
  o.partition_budget = s.budget;
  return o;
}

/******************************************************************************
 * Subcommands                                                                *
 ******************************************************************************/

void cmd_parse( const settings& s, command_outcome& out )
{
  out.report = emit_circuit( load_circuit( s.circuit_path ) );
}

void cmd_eval( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  const auto x = parse_bits( s.x, c.num_inputs(), "--x" );
  bool value;
  if ( s.det )
    value = eval_det( c, x, parse_bits( s.y, c.num_guesses(), "--y" ) );
  else
    value = eval_nondet( c, x, limits_of( s ) );
  out.report = value ? "1\n" : "0\n";
}

void cmd_table( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  out.report = ( s.det ? joint_truth_table( c, limits_of( s ) ) : nondet_truth_table( c, limits_of( s ) ) ).to_string() + "\n";
}

void cmd_metrics( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  const auto m = metrics( c );
  std::ostringstream os;
  os << "size=" << m.size << "\ndepth=" << m.depth << "\n";
  for ( const auto& [ref, fo] : m.fanout )
    os << "fanout " << to_string( ref ) << "=" << fo << "\n";
  out.report = os.str();
}

void cmd_build_parity( const settings& s, command_outcome& out )
{
  if ( s.n < 1 )
    throw precondition_error( "--n must be at least 1" );
  const auto c = build_parity_circuit( s.n );
  const auto m = metrics( c );
  std::vector<std::string> notes{ "size=" + std::to_string( m.size ) + " depth=" + std::to_string( m.depth ) };
  if ( s.n <= limits_of( s ).max_inputs )
  {
    if ( nondet_truth_table( c, limits_of( s ) ) != truth_table::parity( s.n ) )
      throw violation( "parity chain does not compute Parity_" + std::to_string( s.n ) );
    notes.push_back( "table=Parity_" + std::to_string( s.n ) + " verified" );
  }
  deliver_circuit( c, notes, s.out_path, out );
}

void cmd_assign( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  if ( s.input < 1 )
    throw precondition_error( "--input counts from 1" );
  const auto r = assign_and_simplify( c, s.input - 1, s.value );
  deliver_circuit( r.result,
                   { "assigned x" + std::to_string( s.input ) + "=" + ( s.value ? "1" : "0" ) +
                     " eliminated=" + std::to_string( r.eliminated ) + " removed=" + bits_string( r.removed ) },
                   s.out_path, out );
}

void cmd_negate( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  if ( s.input < 1 )
    throw precondition_error( "--i counts from 1" );
  deliver_circuit( negate_actual_input( c, s.input - 1 ), { "negated x" + std::to_string( s.input ) }, s.out_path, out );
}

void cmd_classify( const settings& s, command_outcome& out )
{
  out.report = to_string( classify_case( load_circuit( s.circuit_path ) ) ) + "\n";
}

void cmd_rewrite_case2( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  const auto w = classify_case( c );
  const auto* w2 = std::get_if<case2_witness>( &w );
  if ( !w2 )
    throw violation( "Case 2 does not apply (" + to_string( w ) + ")" );
  const auto r = case2_reconstruct( c, *w2 );
  const auto before = nondet_truth_table( c, limits_of( s ) );
  const auto after = nondet_truth_table( r, limits_of( s ) );
  deliver_circuit( r,
                   { to_string( w ), "size " + std::to_string( c.size() ) + "->" + std::to_string( r.size() ),
                     "table before=" + before.to_string() + " after=" + after.to_string() },
                   s.out_path, out );
  if ( before != after )
    throw violation( "the function changed: it accepts two inputs that differ only in the actual input of g1" );
}

void cmd_eliminate_round( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  const auto r = elimination_round( c, limits_of( s ) );
  std::vector<std::string> notes;
  std::istringstream trace( r.trace.serialize() );
  for ( std::string line; std::getline( trace, line ); )
    notes.push_back( line );
  notes.push_back( "size " + std::to_string( c.size() ) + "->" + std::to_string( r.result.size() ) );
  deliver_circuit( r.result, notes, s.out_path, out );
}

void cmd_tseitin( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  const auto f = tseitin_cnf( c );
  const auto text = write_dimacs( f, &c );
  if ( s.out_path.empty() )
  {
    out.report = text;
    return;
  }
  write_file( s.out_path, text, out );
  std::ostringstream os;
  os << "actual=" << f.num_actual << " guess=" << f.num_guess << " clauses=" << f.clauses.size()
     << " max_width=" << f.max_width() << "\nwrote " << s.out_path << "\n";
  out.report = os.str();
}

void cmd_cnf_eval( const settings& s, command_outcome& out )
{
  const auto text = read_file( s.cnf_path );
  const auto f = read_dimacs( text );
  if ( s.x.empty() )
    out.report = cnf_truth_table( f, limits_of( s ) ).to_string() + "\n";
  else
    out.report = cnf_eval_nondet( f, parse_bits( s.x, f.num_actual, "--x" ), limits_of( s ) ) ? "1\n" : "0\n";
}

void cmd_depth_cut( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  const auto cut = find_depth_cut( c, s.target );
  const auto before = residual_depth( c, {} );
  const auto after = residual_depth( c, cut.edges );
  if ( after > s.target )
    throw violation( "residual depth " + std::to_string( after ) + " exceeds the target" );
  std::ostringstream os;
  os << "target=" << s.target << " depth_before=" << before << " depth_after=" << after
     << " edges=" << cut.edges.size() << "\ncut=" << format_cut( cut.edges ) << "\n";
  out.report = os.str();
  if ( !s.out_path.empty() )
  {
    write_file( s.out_path, "cut=" + format_cut( cut.edges ) + "\n", out );
    out.report += "wrote " + s.out_path + "\n";
  }
}

void cmd_to_formula( const settings& s, command_outcome& out )
{
  const auto c = load_circuit( s.circuit_path );
  edge_cut cut;
  if ( !s.cut.empty() )
  {
    cut.edges = parse_cut( s.cut );
    cut.target_depth = std::uint32_t( residual_depth( c, cut.edges ) );
  }
  else
  {
    cut = find_depth_cut( c, s.target );
  }
  const auto f = formula_convert( c, cut );
  std::vector<std::string> notes{ "cut=" + format_cut( cut.edges ),
                                  "residual_depth=" + std::to_string( residual_depth( c, cut.edges ) ) +
                                      " guesses=" + std::to_string( f.num_guesses() ) +
                                      " size=" + std::to_string( f.size() ) };
  if ( c.num_inputs() <= limits_of( s ).max_inputs && f.num_guesses() <= s.max_guesses )
  {
    const auto want = nondet_truth_table( c, limits_of( s ) );
    if ( nondet_truth_table( f, limits_of( s ) ) != want )
      throw violation( "formula does not compute the circuit's function" );
    notes.push_back( "table=" + want.to_string() + " verified" );
  }
  deliver_circuit( f, notes, s.out_path, out );
}

void cmd_search_min( const settings& s, command_outcome& out )
{
  if ( s.det == s.nondet )
    throw CLI::ValidationError( "search-min", "exactly one of --det and --ndet is required" );
  const auto target = parse_table( s.table );
  const auto mode = s.det ? search_mode::deterministic : search_mode::nondeterministic;
  const auto cert = min_size( target, mode, s.smax, search_options_of( s ) );
  std::ostringstream os;
  os << "params target=" << target.to_string() << " mode=" << to_string( mode ) << " smax=" << s.smax
     << " hard_limit=" << s.hard_limit << " workers=" << s.workers << "\n";
  for ( std::size_t k = 0; k < cert.examined_by_size.size(); ++k )
    os << "size=" << k << " examined=" << cert.examined_by_size[k] << "\n";
  if ( cert.witness )
    os << "min=" << cert.witness->size() << "\n";
  else if ( cert.exhaustive )
    os << "min>" << s.smax << "\n";
  else
    os << "min=unknown (interrupted)\n";
  os << cert.serialize() << "\n";
  out.report = os.str();
  if ( !s.cert_path.empty() )
  {
    write_file( s.cert_path, cert.serialize() + "\n", out );
    out.report += "wrote " + s.cert_path + "\n";
  }
  if ( !cert.exhaustive )
    out.exit_code = limit;
  else if ( !cert.witness )
    out.exit_code = violated;
}

void cmd_verify_bound( const settings& s, command_outcome& out )
{
  if ( s.n != 2 && s.n != 3 )
    throw CLI::ValidationError( "--n", "must be 2 or 3" );
  if ( s.n == 3 && !s.long_run )
    throw CLI::ValidationError( "--n 3", "the n = 3 search is gated behind --long" );
  const auto r = verify_parity_tightness( s.n, s.long_run, search_options_of( s ) );
  const auto cert_path = s.cert_path.empty() ? "parity" + std::to_string( s.n ) + "_bound.cert" : s.cert_path;
  write_file( cert_path, r.serialize(), out );
  std::ostringstream os;
  os << "params n=" << s.n << " s_max=" << r.lower.s_max << " m_bound=" << r.lower.m_bound << " workers=" << s.workers
     << "\n";
  for ( std::size_t k = 0; k < r.lower.examined_by_size.size(); ++k )
    os << "size=" << k << " examined=" << r.lower.examined_by_size[k] << "\n";
  os << "certificate " << cert_path << "\n";
  if ( !r.lower.exhaustive )
  {
    os << "lower=? upper=" << r.upper_bound << " INCOMPLETE\n";
    out.exit_code = limit;
  }
  else if ( r.lower.witness )
  {
    os << "lower<=" << r.lower.witness->size() << " upper=" << r.upper_bound << " NOT TIGHT\n";
    out.exit_code = violated;
  }
  else
  {
    os << "lower=" << r.lower_bound << " upper=" << r.upper_bound << ( r.tight ? " TIGHT" : " NOT TIGHT" ) << "\n";
    out.exit_code = r.tight ? success : violated;
  }
  out.report = os.str();
}

/* Randomized oracle checks over every module, reproducible from the seed. */
void cmd_selftest( const settings& s, command_outcome& out )
{
  std::mt19937_64 rng( s.seed );
  std::ostringstream os;
  os << "params seed=" << s.seed << " count=" << s.count << "\n";
  bool ok = true;
  auto check = [&]( const std::string& name, const std::function<bool( const circuit& )>& pred,
                    const random_circuit_options& shape, std::uint32_t max_n, std::uint32_t max_m,
                    std::uint32_t max_size ) {
    std::uint32_t passed = 0;
    for ( std::uint32_t t = 0; t < s.count; ++t )
    {
      auto opt = shape;
      opt.num_inputs = 1 + std::uint32_t( rng() % max_n );
      opt.num_guesses = max_m ? std::uint32_t( rng() % ( max_m + 1 ) ) : 0;
      opt.size = std::uint32_t( rng() % ( max_size + 1 ) );
      passed += pred( random_circuit( rng, opt ) );
    }
    os << name << " " << passed << "/" << s.count << ( passed == s.count ? " PASS" : " FAIL" ) << "\n";
    ok &= passed == s.count;
  };
  random_circuit_options u2;
  random_circuit_options b2;
  b2.basis = basis::b2;
  b2.allow_constants = true;

  check( "roundtrip", []( const circuit& c ) { return parse_circuit( emit_circuit( c ) ) == c; }, b2, 5, 4, 10 );
  check( "negate-input", [&]( const circuit& c ) {
    const auto i = std::uint32_t( rng() % c.num_inputs() );
    const auto r = negate_actual_input( c, i );
    return r.size() == c.size() && nondet_truth_table( r ) == nondet_truth_table( c ).flip_input( i );
  }, u2, 4, 4, 10 );
  check( "assign", [&]( const circuit& c ) {
    const auto i = std::uint32_t( rng() % c.num_inputs() );
    const bool v = rng() & 1;
    const auto r = assign_and_simplify( c, i, v );
    const auto before = nondet_truth_table( c );
    const auto after = nondet_truth_table( r.result );
    for ( std::uint64_t k = 0; k < after.num_bits(); ++k )
    {
      // reinsert the fixed bit at x_i's position
      const auto low_bits = c.num_inputs() - 1 - i;
      const auto low = k & ( ( std::uint64_t( 1 ) << low_bits ) - 1 );
      const auto full = ( ( k >> low_bits ) << ( low_bits + 1 ) ) | ( std::uint64_t( v ) << low_bits ) | low;
      if ( after.get( k ) != before.get( full ) )
        return false;
    }
    return r.result.size() + r.eliminated == c.size();
  }, u2, 4, 3, 10 );
  check( "tseitin", []( const circuit& c ) {
    const auto f = tseitin_cnf( c );
    return f.clauses.size() <= 4 * c.size() + 1 && f.max_width() <= 3 &&
           cnf_truth_table( f ) == nondet_truth_table( c );
  }, b2, 6, 0, 12 );
  check( "formula", []( const circuit& c ) {
    const auto cut = find_depth_cut( c, 3 );
    const auto f = formula_convert( c, cut );
    return residual_depth( c, cut.edges ) <= 3 && f.num_guesses() == cut.edges.size() + 1 &&
           nondet_truth_table( f ) == nondet_truth_table( c );
  }, b2, 5, 0, 10 );
  out.report = os.str();
  if ( !ok )
    out.exit_code = violated;
}

} // namespace

command_outcome run( const std::vector<std::string>& args )
{
  command_outcome out;
  settings s;
  CLI::App app( "Nondeterministic U2 circuits: evaluation, gate elimination, compilation and exhaustive search", "ndc" );
  app.require_subcommand( 1 );
  app.set_help_all_flag( "--help-all", "Show help for every subcommand" );
  app.add_option( "--max-guesses", s.max_guesses, "Largest guess count evaluated exhaustively" )->capture_default_str();

  std::vector<std::pair<CLI::App*, std::function<void( const settings&, command_outcome& )>>> commands;
  auto sub = [&]( const std::string& name, const std::string& help, auto handler ) {
    auto* cmd = app.add_subcommand( name, help );
    commands.emplace_back( cmd, handler );
    return cmd;
  };
  auto with_circuit = [&]( CLI::App* cmd ) {
    cmd->add_option( "--circuit,circuit", s.circuit_path, "Circuit file" )->required();
    return cmd;
  };
  auto with_out = [&]( CLI::App* cmd ) {
    cmd->add_option( "--out", s.out_path, "Write the result to this file instead of standard output" );
    return cmd;
  };

  with_circuit( sub( "parse", "Check a circuit file and print it in normal form", cmd_parse ) );

  auto* eval = with_circuit( sub( "eval", "Evaluate a circuit on one input", cmd_eval ) );
  eval->add_option( "--x", s.x, "Actual input bits, x1 first" )->required();
  eval->add_option( "--y", s.y, "Guess bits for --det, y1 first" );
  auto* det_flag = eval->add_flag( "--det", s.det, "Evaluate with the given guess bits" );
  eval->add_flag( "--nondet", s.nondet, "Accept iff some guess assignment gives 1 (default)" )->excludes( det_flag );

  auto* table = with_circuit( sub( "table", "Print the nondeterministic truth table (x1 most significant)", cmd_table ) );
  table->add_flag( "--det", s.det, "Print the joint table over actual and guess inputs instead" );

  with_circuit( sub( "metrics", "Print size, depth and fan-out", cmd_metrics ) );

  auto* parity = with_out( sub( "build-parity", "Build the 3(n-1)-gate parity chain", cmd_build_parity ) );
  parity->add_option( "--n", s.n, "Number of inputs" )->required()->check( CLI::Range( 1u, 1000u ) );

  auto* assign = with_out( with_circuit( sub( "assign", "Fix an actual input and simplify", cmd_assign ) ) );
  assign->add_option( "--input", s.input, "Input index, from 1" )->required();
  assign->add_option( "--value", s.value, "Value 0 or 1" )->required();

  auto* negate = with_out( with_circuit( sub( "negate-input", "Complement an actual input by relabelling", cmd_negate ) ) );
  negate->add_option( "--i", s.input, "Input index, from 1" )->required();

  with_circuit( sub( "classify", "Report which elimination case applies", cmd_classify ) );
  with_out( with_circuit( sub( "rewrite-case2", "Apply the Case-2 reconstruction once", cmd_rewrite_case2 ) ) );
  with_out( with_circuit( sub( "eliminate-round", "One gate-elimination round on a parity circuit", cmd_eliminate_round ) ) );
  with_out( with_circuit( sub( "tseitin", "Tseitin CNF in DIMACS form", cmd_tseitin ) ) );

  auto* cnf = sub( "cnf-eval", "Evaluate a DIMACS CNF as a nondeterministic formula", cmd_cnf_eval );
  cnf->add_option( "--cnf,cnf", s.cnf_path, "DIMACS file" )->required();
  cnf->add_option( "--x", s.x, "Actual input bits; the whole table is printed when omitted" );

  auto* cut = with_out( with_circuit( sub( "depth-cut", "Greedy edge cut down to a target depth", cmd_depth_cut ) ) );
  cut->add_option( "--target", s.target, "Residual depth bound" )->required()->check( CLI::PositiveNumber );

  auto* formula = with_out( with_circuit( sub( "to-formula", "Convert to a nondeterministic formula", cmd_to_formula ) ) );
  auto* cut_opt = formula->add_option( "--cut", s.cut, "Cut edges (g4.left,g5.right or none) or a file holding them" );
  formula->add_option( "--target", s.target, "Compute the cut greedily for this depth instead" )
      ->excludes( cut_opt )
      ->check( CLI::PositiveNumber );

  auto search_flags = [&]( CLI::App* cmd ) {
    cmd->add_option( "--workers", s.workers, "Worker threads" )->capture_default_str()->check( CLI::Range( 1u, 256u ) );
    cmd->add_option( "--checkpoint", s.checkpoint, "Record finished partitions here and skip them when resuming" );
    cmd->add_option( "--budget", s.budget, "Stop after this many partitions (resume later from the checkpoint)" );
    cmd->add_option( "--hard-limit", s.hard_limit, "Largest gate count searched" )->capture_default_str();
    cmd->add_option( "--cert", s.cert_path, "Certificate file" );
  };
  auto* search = sub( "search-min", "Exhaustive minimum-size search", cmd_search_min );
  auto* sdet = search->add_flag( "--det", s.det, "Deterministic circuits" );
  search->add_flag( "--ndet,--nondet", s.nondet, "Nondeterministic circuits" )->excludes( sdet );
  search->add_option( "--table", s.table, "Target: bit string (x1 most significant) or parity<k>" )->required();
  search->add_option( "--smax", s.smax, "Largest size searched" )->required();
  search->add_option( "--m-bound", s.m_bound, "Guess-input bound (default 2 * smax)" );
  search_flags( search );

  auto* verify = sub( "verify-bound", "Certify size^ndc(Parity_n) = 3(n-1)", cmd_verify_bound );
  verify->add_option( "--n", s.n, "2, or 3 with --long" )->required();
  verify->add_flag( "--long", s.long_run, "Allow the n = 3 search" );
  search_flags( verify );

  auto* self = sub( "selftest", "Randomized oracle checks of every module", cmd_selftest );
  self->add_option( "--seed", s.seed, "Random seed" )->capture_default_str();
  self->add_option( "--count", s.count, "Circuits per check" )->capture_default_str();

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
    for ( const auto& [cmd, handler] : commands )
      if ( cmd->parsed() )
        handler( s, out );
  }
  catch ( const CLI::CallForHelp& )
  {
    out.report = app.help();
    for ( const auto& [cmd, handler] : commands )
      if ( cmd->parsed() )
        out.report = cmd->help();
  }
  catch ( const CLI::CallForAllHelp& )
  {
    out.report = app.help( "", CLI::AppFormatMode::All );
  }
  catch ( const CLI::Error& e )
  {
    out.exit_code = usage;
    out.error = e.what() + std::string( "\nRun with --help for usage.\n" );
  }
  catch ( const violation& e )
  {
    out.exit_code = violated;
    out.error = e.what() + std::string( "\n" );
  }
  catch ( const limit_error& e )
  {
    out.exit_code = limit;
    out.error = std::string( "limit exceeded: " ) + e.what() + "\n";
  }
  catch ( const precondition_error& e )
  {
    out.exit_code = violated;
    out.error = e.what() + std::string( "\n" );
  }
  catch ( const parse_error& e )
  {
    out.exit_code = usage;
    out.error = std::string( "parse error " ) + e.what() + "\n";
  }
  catch ( const circuit_error& e )
  {
    out.exit_code = usage;
    out.error = std::string( "invalid circuit: " ) + e.what() + "\n";
  }
  catch ( const io_error& e )
  {
    out.exit_code = usage;
    out.error = e.what() + std::string( "\n" );
  }
  catch ( const std::exception& e )
  {
    out.exit_code = violated;
    out.error = std::string( "internal error: " ) + e.what() + "\n";
  }
  return out;
}

} // namespace ndc::cli
