#include "ndc/text_format.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "ndc/error.hpp"

namespace ndc
{

namespace
{

struct position
{
  std::size_t line;
  std::size_t column;
};

/* Cursor over one statement; columns are relative to the physical line. */
class cursor
{
public:
  cursor( std::string_view text, std::size_t line, std::size_t column0 )
      : text_( text ), line_( line ), column0_( column0 )
  {
  }

  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  bool at_end()
  {
    skip_space();
    return pos_ >= text_.size();
  }

  position here() const { return { line_, column0_ + pos_ + 1 }; }

  [[noreturn]] void fail( const std::string& what ) const
  {
    const auto p = here();
    throw parse_error( p.line, p.column, what );
  }

  /* identifier-like word: letters, digits, '_', '.', '-' */
  std::string_view word()
  {
    skip_space();
    const auto start = pos_;
    while ( pos_ < text_.size() )
    {
      const auto ch = static_cast<unsigned char>( text_[pos_] );
      if ( std::isalnum( ch ) || ch == '_' || ch == '.' || ch == '-' )
        ++pos_;
      else
        break;
    }
    if ( start == pos_ )
      fail( pos_ < text_.size() ? std::string( "unexpected '" ) + text_[pos_] + "'" : "unexpected end of line" );
    return text_.substr( start, pos_ - start );
  }

  bool accept( char ch )
  {
    skip_space();
    if ( pos_ < text_.size() && text_[pos_] == ch )
    {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect( char ch )
  {
    if ( !accept( ch ) )
      fail( std::string( "expected '" ) + ch + "'" );
  }

  std::size_t line() const { return line_; }

private:
  std::string_view text_;
  std::size_t line_;
  std::size_t column0_;
  std::size_t pos_ = 0;
};

std::optional<std::uint32_t> parse_number( std::string_view s )
{
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), value );
  if ( ec != std::errc() || ptr != s.data() + s.size() || s.empty() )
    return std::nullopt;
  return value;
}

/* x<i> / y<j> with i, j >= 1 */
std::optional<std::pair<char, std::uint32_t>> input_name( std::string_view s )
{
  if ( s.size() < 2 || ( s[0] != 'x' && s[0] != 'y' ) )
    return std::nullopt;
  const auto n = parse_number( s.substr( 1 ) );
  if ( !n || *n == 0 )
    return std::nullopt;
  return std::pair{ s[0], *n };
}

struct operand_token
{
  std::string text;
  position where;
};

struct gate_def
{
  std::string id;
  gate_function function;
  operand_token left;
  operand_token right;
  position where;
};

struct header
{
  std::string name;
  std::uint32_t inputs = 0;
  std::uint32_t guesses = 0;
  ndc::basis basis = basis::u2;
};

header parse_header( cursor& cur )
{
  header h;
  h.name = std::string( cur.word() );
  bool have_inputs = false, have_guess = false;
  while ( !cur.at_end() )
  {
    const auto key = cur.word();
    if ( key == "basis" )
    {
      const auto b = cur.word();
      if ( b == "U2" )
        h.basis = basis::u2;
      else if ( b == "B2" )
        h.basis = basis::b2;
      else
        cur.fail( "unknown basis '" + std::string( b ) + "'" );
      continue;
    }
    if ( key != "inputs" && key != "guess" )
      cur.fail( "unknown header field '" + std::string( key ) + "'" );
    cur.expect( '=' );
    const auto value = cur.word();
    const auto n = parse_number( value );
    if ( !n )
      cur.fail( "expected a count after '" + std::string( key ) + "='" );
    if ( key == "inputs" )
    {
      h.inputs = *n;
      have_inputs = true;
    }
    else
    {
      h.guesses = *n;
      have_guess = true;
    }
  }
  if ( !have_inputs || !have_guess )
    cur.fail( "header needs inputs=<n> and guess=<m>" );
  return h;
}

} // namespace

circuit parse_circuit( std::string_view text )
{
  std::optional<header> head;
  std::vector<gate_def> defs;
  std::optional<operand_token> output;
  bool output_negated = false;
  std::size_t last_line = 1;

  std::size_t line_no = 0;
  std::size_t line_start = 0;
  while ( line_start <= text.size() )
  {
    ++line_no;
    auto line_end = text.find( '\n', line_start );
    if ( line_end == std::string_view::npos )
      line_end = text.size();
    auto line = text.substr( line_start, line_end - line_start );
    if ( const auto hash = line.find( '#' ); hash != std::string_view::npos )
      line = line.substr( 0, hash );

    std::size_t seg_start = 0;
    while ( seg_start <= line.size() )
    {
      auto seg_end = line.find( ';', seg_start );
      if ( seg_end == std::string_view::npos )
        seg_end = line.size();
      cursor cur( line.substr( seg_start, seg_end - seg_start ), line_no, seg_start );
      if ( !cur.at_end() )
      {
        last_line = line_no;
        const auto where = cur.here();
        const auto first = cur.word();
        if ( !head )
        {
          if ( first != "circuit" )
            cur.fail( "expected 'circuit' header" );
          head = parse_header( cur );
        }
        else if ( first == "circuit" )
        {
          cur.fail( "duplicate 'circuit' header" );
        }
        else if ( first == "output" )
        {
          if ( output )
            cur.fail( "duplicate 'output' line" );
          output_negated = cur.accept( '!' );
          const auto op_where = cur.here();
          output = operand_token{ std::string( cur.word() ), op_where };
          if ( !cur.at_end() )
            cur.fail( "trailing characters after output" );
        }
        else
        {
          gate_def def;
          def.id = std::string( first );
          def.where = where;
          cur.expect( '=' );
          const auto fn_where = cur.here();
          const auto fn_name = cur.word();
          const auto f = gate_function::from_name( fn_name );
          if ( !f )
            throw parse_error( fn_where.line, fn_where.column, "unknown function '" + std::string( fn_name ) + "'" );
          def.function = *f;
          cur.expect( '(' );
          std::vector<operand_token> ops;
          if ( !cur.accept( ')' ) )
          {
            do
            {
              const auto op_where = cur.here();
              ops.push_back( { std::string( cur.word() ), op_where } );
            } while ( cur.accept( ',' ) );
            cur.expect( ')' );
          }
          if ( ops.size() != 2 )
            throw parse_error( fn_where.line, fn_where.column,
                               "arity mismatch: " + std::string( fn_name ) + " takes 2 operands, got " +
                                   std::to_string( ops.size() ) );
          if ( !cur.at_end() )
            cur.fail( "trailing characters after gate" );
          if ( head->basis == basis::u2 && !f->is_u2() )
            throw parse_error( fn_where.line, fn_where.column,
                               std::string( fn_name ) + " is not in U2 (use 'basis B2')" );
          def.left = ops[0];
          def.right = ops[1];
          defs.push_back( std::move( def ) );
        }
      }
      seg_start = seg_end + 1;
    }
    line_start = line_end + 1;
  }

  if ( !head )
    throw parse_error( 1, 1, "missing 'circuit' header" );
  if ( !output )
    throw parse_error( last_line, 1, "missing 'output' line" );

  std::unordered_map<std::string, std::size_t> by_id;
  for ( std::size_t k = 0; k < defs.size(); ++k )
  {
    const auto& d = defs[k];
    if ( input_name( d.id ) || d.id == "0" || d.id == "1" )
      throw parse_error( d.where.line, d.where.column, "gate id '" + d.id + "' clashes with an input or constant" );
    if ( !by_id.emplace( d.id, k ).second )
      throw parse_error( d.where.line, d.where.column, "duplicate gate id '" + d.id + "'" );
  }

  // operands resolved to either a fixed node or a textual gate index
  struct resolved
  {
    node_ref node;
    std::optional<std::size_t> def;
  };
  auto resolve = [&]( const operand_token& op ) -> resolved {
    if ( op.text == "0" || op.text == "1" )
      return { node_ref::constant( op.text == "1" ), std::nullopt };
    if ( const auto in = input_name( op.text ) )
    {
      const auto limit = in->first == 'x' ? head->inputs : head->guesses;
      if ( in->second > limit )
        throw parse_error( op.where.line, op.where.column, "undefined node reference '" + op.text + "'" );
      const auto idx = in->second - 1;
      return { in->first == 'x' ? node_ref::actual( idx ) : node_ref::guess( idx ), std::nullopt };
    }
    const auto it = by_id.find( op.text );
    if ( it == by_id.end() )
      throw parse_error( op.where.line, op.where.column, "undefined node reference '" + op.text + "'" );
    return { node_ref::gate( 0 ), it->second };
  };

  std::vector<std::array<resolved, 2>> operands;
  operands.reserve( defs.size() );
  for ( const auto& d : defs )
    operands.push_back( { resolve( d.left ), resolve( d.right ) } );

  // stable topological order (Kahn, smallest textual index first)
  std::vector<std::size_t> pending( defs.size(), 0 );
  std::vector<std::vector<std::size_t>> users( defs.size() );
  for ( std::size_t k = 0; k < defs.size(); ++k )
  {
    for ( const auto& r : operands[k] )
    {
      if ( r.def )
      {
        ++pending[k];
        users[*r.def].push_back( k );
      }
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for ( std::size_t k = 0; k < defs.size(); ++k )
    if ( pending[k] == 0 )
      ready.push( k );
  std::vector<std::size_t> order;
  std::vector<std::uint32_t> position_of( defs.size(), 0 );
  while ( !ready.empty() )
  {
    const auto k = ready.top();
    ready.pop();
    position_of[k] = std::uint32_t( order.size() );
    order.push_back( k );
    for ( auto u : users[k] )
      if ( --pending[u] == 0 )
        ready.push( u );
  }
  if ( order.size() != defs.size() )
  {
    for ( std::size_t k = 0; k < defs.size(); ++k )
      if ( pending[k] != 0 )
        throw parse_error( defs[k].where.line, defs[k].where.column, "cycle through gate '" + defs[k].id + "'" );
  }

  auto final_ref = [&]( const resolved& r ) { return r.def ? node_ref::gate( position_of[*r.def] ) : r.node; };
  std::vector<gate> gates;
  gates.reserve( defs.size() );
  for ( auto k : order )
    gates.push_back( { defs[k].function, final_ref( operands[k][0] ), final_ref( operands[k][1] ) } );

  const auto out = final_ref( resolve( *output ) );
  if ( output_negated && !out.is_input() )
    throw parse_error( output->where.line, output->where.column, "'!' is only allowed in front of an input" );

  try
  {
    return circuit( head->name, head->inputs, head->guesses, head->basis, std::move( gates ), out, output_negated );
  }
  catch ( const circuit_error& e )
  {
    throw parse_error( 1, 1, e.what() );
  }
}

std::string emit_circuit( const circuit& c )
{
  std::ostringstream os;
  os << "circuit " << c.name() << " inputs=" << c.num_inputs() << " guess=" << c.num_guesses() << " basis "
     << ( c.basis() == basis::u2 ? "U2" : "B2" ) << "\n";
  for ( std::size_t k = 0; k < c.size(); ++k )
  {
    const auto& g = c.gates()[k];
    os << "g" << ( k + 1 ) << " = " << g.function.name() << "(" << to_string( g.left ) << ", "
       << to_string( g.right ) << ")\n";
  }
  os << "output " << ( c.output_negated() ? "!" : "" ) << to_string( c.output() ) << "\n";
  return os.str();
}

std::string emit_circuit_inline( const circuit& c )
{
  auto text = emit_circuit( c );
  text.pop_back();
  std::string out;
  for ( char ch : text )
  {
    if ( ch == '\n' )
      out += "; ";
    else
      out += ch;
  }
  return out;
}

} // namespace ndc
