#include "ndc/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ndc/detail/words.hpp"
#include "ndc/error.hpp"
#include "ndc/eval.hpp"
#include "ndc/text_format.hpp"
#include "ndc/transforms.hpp"

namespace ndc
{

std::string to_string( search_mode mode )
{
  return mode == search_mode::deterministic ? "det" : "ndet";
}

std::string search_certificate::serialize() const
{
  std::ostringstream os;
  os << "target=" << target.to_string() << " mode=" << to_string( mode ) << " s_max=" << s_max
     << " m_bound=" << m_bound << " exhaustive=" << ( exhaustive ? "true" : "false" ) << " examined=" << examined
     << " witness=" << ( witness ? emit_circuit_inline( *witness ) : "NONE" );
  return os.str();
}

/******************************************************************************
 * Canonical enumeration                                                      *
 ******************************************************************************/

namespace
{

constexpr std::array<gate_function, 8> enumeration_order{ fn::AND,   fn::OR,    fn::NAND, fn::NOR,
                                                          fn::ANDNY, fn::ANDNX, fn::ORNY, fn::ORNX };

bool symmetric( gate_function f )
{
  return f == fn::AND || f == fn::OR || f == fn::NAND || f == fn::NOR;
}

class canonical_enumerator
{
public:
  canonical_enumerator( std::uint32_t n, std::uint32_t s, search_mode mode,
                        const std::function<bool( const circuit& )>& visit )
      : n_( n ), s_( s ), nondet_( mode == search_mode::nondeterministic ), visit_( visit ), readers_( s, 0 )
  {
  }

  std::uint64_t run()
  {
    gate_slot( 0, 0 );
    return count_;
  }

private:
  /* Operand choices in enumeration order, given `m` guesses already in use. */
  std::vector<node_ref> operands( std::uint32_t k, std::uint32_t m ) const
  {
    std::vector<node_ref> out{ node_ref::constant( false ), node_ref::constant( true ) };
    for ( std::uint32_t i = 0; i < n_; ++i )
      out.push_back( node_ref::actual( i ) );
    if ( nondet_ )
      for ( std::uint32_t j = 0; j <= m; ++j )
        out.push_back( node_ref::guess( j ) );
    for ( std::uint32_t g = 0; g < k; ++g )
      out.push_back( node_ref::gate( g ) );
    return out;
  }

  static std::uint32_t grown( node_ref ref, std::uint32_t m )
  {
    return ref.is_guess() && ref.index == m ? m + 1 : m;
  }

  bool gate_slot( std::uint32_t k, std::uint32_t m )
  {
    if ( k == s_ )
      return emit( m );
    for ( const auto f : enumeration_order )
    {
      for ( const auto left : operands( k, m ) )
      {
        const auto m_left = grown( left, m );
        for ( const auto right : operands( k, m_left ) )
        {
          if ( symmetric( f ) && right < left )
            continue;
          gates_.push_back( { f, left, right } );
          add_reader( left, +1 );
          add_reader( right, +1 );
          bool go = true;
          // gates 0..k still without reader must be absorbed by the 2(s-1-k) slots that remain
          if ( k + 1 == s_ || unread( k + 1 ) <= 2 * ( s_ - 1 - k ) )
            go = gate_slot( k + 1, grown( right, m_left ) );
          add_reader( left, -1 );
          add_reader( right, -1 );
          gates_.pop_back();
          if ( !go )
            return false;
        }
      }
    }
    return true;
  }

  void add_reader( node_ref ref, int delta )
  {
    if ( ref.is_gate() )
      readers_[ref.index] += delta;
  }

  std::uint32_t unread( std::uint32_t upto ) const
  {
    std::uint32_t u = 0;
    for ( std::uint32_t g = 0; g < upto; ++g )
      u += readers_[g] == 0;
    return u;
  }

  bool emit( std::uint32_t m )
  {
    if ( unread( s_ - 1 ) != 0 )
      return true;
    ++count_;
    return visit_( circuit( "canonical", n_, m, basis::u2, gates_, node_ref::gate( s_ - 1 ) ) );
  }

  std::uint32_t n_, s_;
  bool nondet_;
  const std::function<bool( const circuit& )>& visit_;
  std::vector<int> readers_;
  std::vector<gate> gates_;
  std::uint64_t count_ = 0;
};

} // namespace

std::uint64_t enumerate_canonical( std::uint32_t n, std::uint32_t s, search_mode mode,
                                   const std::function<bool( const circuit& )>& visit, const search_options& options )
{
  if ( s > options.hard_limit )
    throw limit_error( "enumeration size " + std::to_string( s ) + " exceeds the hard limit " +
                       std::to_string( options.hard_limit ) );
  if ( s > 0 )
    return canonical_enumerator( n, s, mode, visit ).run();

  std::vector<circuit> outputs;
  for ( bool b : { false, true } )
    outputs.emplace_back( "canonical", n, 0, basis::u2, std::vector<gate>{}, node_ref::constant( b ) );
  for ( std::uint32_t i = 0; i < n; ++i )
    for ( bool neg : { false, true } )
      outputs.emplace_back( "canonical", n, 0, basis::u2, std::vector<gate>{}, node_ref::actual( i ), neg );
  if ( mode == search_mode::nondeterministic )
    outputs.emplace_back( "canonical", n, 1, basis::u2, std::vector<gate>{}, node_ref::guess( 0 ) );
  std::uint64_t count = 0;
  for ( const auto& c : outputs )
  {
    ++count;
    if ( !visit( c ) )
      break;
  }
  return count;
}

/******************************************************************************
 * Size search engine                                                         *
 ******************************************************************************/

namespace
{

/*
 * The engine searches a normal form that every smallest circuit can be brought into
 * without growing:
 *  - no gate reads a constant or the same node twice, and no gate computes a constant,
 *    a node that already exists, or its complement (each would allow a smaller circuit);
 *  - gates other than the output are ANDs of literals ((u ^ a) & (v ^ b)); the output
 *    constant c of a U2 gate is pushed into its readers;
 *  - operand pairs are unordered (lower node id first);
 *  - guesses are numbered by first use and are read positively at their first use
 *    (renaming and complementing a guess keeps the existential semantics);
 *  - every gate but the output is read, and every input the target depends on is read.
 * Joint tables keep the actual inputs in the low bits and the guesses above, so a table
 * over fewer guesses is the same table repeated; tables never need widening.
 */

struct choice
{
  std::uint8_t u, v;
  bool a, b;
};

std::uint32_t words_for( std::uint32_t bits )
{
  return bits <= 6 ? 1u : ( 1u << ( bits - 6 ) );
}

class size_engine
{
public:
  static constexpr std::uint32_t max_nodes = 40;

  size_engine( std::uint32_t n, std::uint32_t target, bool nondet, std::uint32_t s, std::uint32_t m_bound )
      : n_( n ),
        s_( s ),
        m_bound_( nondet ? m_bound : 0 ),
        nondet_( nondet ),
        mask_( ( 1u << ( 1u << n ) ) - 1 ),
        target_( target ),
        stride_( words_for( n + m_bound_ ) ),
        tables_( std::size_t( max_nodes ) * stride_ ),
        scratch_( stride_ )
  {
    if ( n + m_bound_ + s + 2 > max_nodes )
      throw limit_error( "search space too wide" );
    for ( std::uint32_t i = 0; i < n; ++i )
    {
      bool essential = false;
      for ( std::uint32_t k = 0; k < ( 1u << n ); ++k )
        essential |= ( ( target >> k ) & 1u ) != ( ( target >> ( k ^ ( 1u << ( n - 1 - i ) ) ) ) & 1u );
      essential_[i] = essential;
    }
  }

  struct hit
  {
    std::vector<choice> gates;
    choice output;
    bool c;
  };

  struct outcome
  {
    std::uint64_t examined = 0;
    std::optional<circuit> witness;
  };

  std::uint32_t prefix_depth() const { return s_ >= 3 ? 2 : s_ - 1; }

  std::vector<std::vector<choice>> partitions()
  {
    reset();
    std::vector<std::vector<choice>> out;
    collect_ = &out;
    level( 0 );
    collect_ = nullptr;
    return out;
  }

  outcome run( const std::vector<choice>& prefix )
  {
    reset();
    for ( const auto& ch : prefix )
      commit( ch );
    examined_ = 0;
    witness_.reset();
    level( std::uint32_t( prefix.size() ) );
    return { examined_, std::move( witness_ ) };
  }

private:
  struct node
  {
    node_ref ref;
    std::uint32_t width;
    std::uint32_t exists, forall;
    bool used;
  };

  std::uint64_t* table( std::uint32_t id ) { return tables_.data() + std::size_t( id ) * stride_; }

  void reset()
  {
    num_nodes_ = 0;
    m_ = 0;
    unused_gates_ = 0;
    unused_x_ = 0;
    gates_.clear();
    for ( std::uint32_t i = 0; i < n_; ++i )
    {
      auto* t = table( i );
      t[0] = detail::lane_patterns[n_ - 1 - i];
      set_node( i, node_ref::actual( i ), 1 );
      unused_x_ += essential_[i];
    }
    num_nodes_ = n_;
  }

  std::uint32_t fold_exists( std::uint64_t w ) const
  {
    for ( std::uint32_t sh = 32; sh >= ( 1u << n_ ); sh >>= 1 )
      w |= w >> sh;
    return std::uint32_t( w ) & mask_;
  }

  std::uint32_t fold_forall( std::uint64_t w ) const
  {
    for ( std::uint32_t sh = 32; sh >= ( 1u << n_ ); sh >>= 1 )
      w &= w >> sh;
    return std::uint32_t( w ) & mask_;
  }

  void set_node( std::uint32_t id, node_ref ref, std::uint32_t width )
  {
    const auto* t = table( id );
    std::uint64_t any = 0, all = ~std::uint64_t( 0 );
    for ( std::uint32_t i = 0; i < width; ++i )
    {
      any |= t[i];
      all &= t[i];
    }
    nodes_[id] = { ref, width, fold_exists( any ), fold_forall( all ), false };
  }

  /* Prepares guess y_j in slot `id` without committing it. */
  void prepare_guess( std::uint32_t id, std::uint32_t j )
  {
    const auto width = words_for( n_ + j + 1 );
    auto* t = table( id );
    for ( std::uint32_t i = 0; i < width; ++i )
      t[i] = detail::variable_word( n_ + j, i );
    set_node( id, node_ref::guess( j ), width );
  }

  bool is_unused_gate( std::uint32_t id ) const { return nodes_[id].ref.is_gate() && !nodes_[id].used; }
  bool is_unused_essential( std::uint32_t id ) const
  {
    return nodes_[id].ref.is_actual() && !nodes_[id].used && essential_[nodes_[id].ref.index];
  }

  /* Computes the AND of two literals into `out` over `width` words. */
  void and_literals( std::uint32_t u, bool a, std::uint32_t v, bool b, std::uint32_t width, std::uint64_t* out )
  {
    const auto* tu = table( u );
    const auto* tv = table( v );
    const auto wu = nodes_[u].width, wv = nodes_[v].width;
    const std::uint64_t ma = a ? ~std::uint64_t( 0 ) : 0, mb = b ? ~std::uint64_t( 0 ) : 0;
    for ( std::uint32_t i = 0; i < width; ++i )
      out[i] = ( tu[i & ( wu - 1 )] ^ ma ) & ( tv[i & ( wv - 1 )] ^ mb );
  }

  /* The table is constant, or equals an existing node or its complement. */
  bool redundant( const std::uint64_t* t, std::uint32_t width, std::uint32_t existing )
  {
    std::uint64_t any = 0, all = ~std::uint64_t( 0 );
    for ( std::uint32_t i = 0; i < width; ++i )
    {
      any |= t[i];
      all &= t[i];
    }
    if ( any == 0 || all == ~std::uint64_t( 0 ) )
      return true;
    for ( std::uint32_t id = 0; id < existing; ++id )
    {
      const auto* o = table( id );
      const auto wo = nodes_[id].width;
      if ( t[0] != o[0] && t[0] != ~o[0] )
        continue;
      const std::uint64_t flip = t[0] == o[0] ? 0 : ~std::uint64_t( 0 );
      bool same = true;
      for ( std::uint32_t i = 1; i < width && same; ++i )
        same = t[i] == ( o[i & ( wo - 1 )] ^ flip );
      if ( same )
        return true;
    }
    return false;
  }

  /* Commits a non-output gate (its table is computed here). */
  void commit( const choice& ch )
  {
    while ( std::max( ch.u, ch.v ) >= num_nodes_ )
    {
      prepare_guess( num_nodes_, m_ );
      ++m_;
      ++num_nodes_;
    }
    const auto width = words_for( n_ + m_ );
    and_literals( ch.u, ch.a, ch.v, ch.b, width, table( num_nodes_ ) );
    use( ch.u );
    use( ch.v );
    set_node( num_nodes_, node_ref::gate( std::uint32_t( gates_.size() ) ), width );
    ++num_nodes_;
    ++unused_gates_;
    gates_.push_back( ch );
  }

  void use( std::uint32_t id )
  {
    if ( nodes_[id].used )
      return;
    if ( nodes_[id].ref.is_gate() )
      --unused_gates_;
    if ( is_unused_essential( id ) )
      --unused_x_;
    nodes_[id].used = true;
  }

  /* Returns false when the search should stop (witness found). */
  bool level( std::uint32_t k )
  {
    if ( collect_ && k == prefix_depth() )
    {
      collect_->push_back( gates_ );
      return true;
    }
    const auto N = num_nodes_;
    const bool fresh1 = nondet_ && m_ < m_bound_;
    const bool fresh2 = nondet_ && m_ + 1 < m_bound_;
    if ( fresh1 )
      prepare_guess( N, m_ );
    if ( fresh2 )
      prepare_guess( N + 1, m_ + 1 );
    const bool last = k + 1 == s_;
    const std::uint32_t remaining = s_ - 1 - k;

    for ( std::uint32_t u = 0; u <= N; ++u )
    {
      if ( u == N && !fresh1 )
        break;
      const std::uint32_t v_end = u == N ? ( fresh2 ? N + 2 : N + 1 ) : ( fresh1 ? N + 1 : N );
      for ( std::uint32_t v = std::max( u + 1, u == N ? N + 1 : 0 ); v < v_end; ++v )
      {
        const auto ug = unused_gates_ - ( u < N && is_unused_gate( u ) ) - ( v < N && is_unused_gate( v ) );
        const auto ux = unused_x_ - ( u < N && is_unused_essential( u ) ) - ( v < N && is_unused_essential( v ) );
        if ( last ? ( ug != 0 || ux != 0 ) : ( ug + 1 + ux > remaining + 1 ) )
          continue;
        const auto m_new = m_ + ( u >= N ) + ( v >= N );
        for ( unsigned pa = 0; pa < ( u >= N ? 1u : 2u ); ++pa )
        {
          for ( unsigned pb = 0; pb < ( v >= N ? 1u : 2u ); ++pb )
          {
            if ( last )
            {
              if ( final_gate( u, pa, v, pb, m_new ) )
                return false;
              continue;
            }
            const auto width = words_for( n_ + m_new );
            and_literals( u, pa, v, pb, width, scratch_.data() );
            if ( redundant( scratch_.data(), width, N ) )
              continue;
            if ( !descend( { std::uint8_t( u ), std::uint8_t( v ), bool( pa ), bool( pb ) }, k ) )
              return false;
          }
        }
      }
    }
    return true;
  }

  bool descend( const choice& ch, std::uint32_t k )
  {
    const auto saved_nodes = num_nodes_, saved_m = m_, saved_ug = unused_gates_, saved_ux = unused_x_;
    const bool used_u = nodes_[ch.u].used, used_v = nodes_[ch.v].used;
    commit( ch );
    const bool go = level( k + 1 );
    gates_.pop_back();
    num_nodes_ = saved_nodes;
    m_ = saved_m;
    unused_gates_ = saved_ug;
    unused_x_ = saved_ux;
    if ( ch.u < saved_nodes )
      nodes_[ch.u].used = used_u;
    if ( ch.v < saved_nodes )
      nodes_[ch.v].used = used_v;
    // fresh guesses prepared in slots N, N + 1 were overwritten by commit: prepare again
    if ( nondet_ && m_ < m_bound_ )
      prepare_guess( saved_nodes, m_ );
    if ( nondet_ && m_ + 1 < m_bound_ )
      prepare_guess( saved_nodes + 1, m_ + 1 );
    return go;
  }

  /* Projection of literal (id ^ neg) onto the actual inputs. */
  std::uint32_t projection( std::uint32_t id, bool neg ) const
  {
    return neg ? ( ~nodes_[id].forall & mask_ ) : nodes_[id].exists;
  }

  bool final_gate( std::uint32_t u, bool a, std::uint32_t v, bool b, std::uint32_t m_new )
  {
    examined_ += 2;
    // c = 1: the output is !u' | !v', accepted exactly where either negation can be made true
    if ( ( projection( u, !a ) | projection( v, !b ) ) == target_ )
      return record( u, a, v, b, true, m_new );
    // c = 0: both literals must be satisfiable wherever the target is 1
    if ( ( projection( u, a ) & target_ ) != target_ || ( projection( v, b ) & target_ ) != target_ )
      return false;
    const auto width = words_for( n_ + m_new );
    and_literals( u, a, v, b, width, scratch_.data() );
    std::uint64_t any = 0;
    for ( std::uint32_t i = 0; i < width; ++i )
      any |= scratch_[i];
    if ( fold_exists( any ) == target_ )
      return record( u, a, v, b, false, m_new );
    return false;
  }

  bool record( std::uint32_t u, bool a, std::uint32_t v, bool b, bool c, std::uint32_t m_new )
  {
    std::vector<gate> gates;
    auto ref = [&]( std::uint32_t id ) { return nodes_[id].ref; };
    for ( const auto& ch : gates_ )
      gates.push_back( { gate_function::from_u2( { ch.a, ch.b, false } ), ref( ch.u ), ref( ch.v ) } );
    gates.push_back( { gate_function::from_u2( { a, b, c } ), ref( u ), ref( v ) } );
    witness_.emplace( "min", n_, m_new, basis::u2, std::move( gates ),
                      node_ref::gate( std::uint32_t( gates_.size() ) ) );
    return true;
  }

  std::uint32_t n_, s_, m_bound_;
  bool nondet_;
  std::uint32_t mask_, target_;
  std::uint32_t stride_;
  std::vector<std::uint64_t> tables_;
  std::vector<std::uint64_t> scratch_;
  std::array<node, max_nodes> nodes_{};
  std::array<bool, 8> essential_{};
  std::uint32_t num_nodes_ = 0, m_ = 0, unused_gates_ = 0, unused_x_ = 0;
  std::vector<choice> gates_;
  std::vector<std::vector<choice>>* collect_ = nullptr;
  std::uint64_t examined_ = 0;
  std::optional<circuit> witness_;
};

/******************************************************************************
 * Checkpoints                                                                *
 ******************************************************************************/

struct partition_record
{
  std::uint64_t examined = 0;
  std::optional<circuit> witness;
};

class checkpoint_file
{
public:
  checkpoint_file( std::optional<std::string> path, std::string key ) : path_( std::move( path ) ), key_( std::move( key ) )
  {
    if ( !path_ )
      return;
    std::ifstream in( *path_ );
    if ( !in )
      return;
    std::string line;
    bool keyed = false;
    while ( std::getline( in, line ) )
    {
      if ( line.empty() || line[0] == '#' )
        continue;
      if ( line.rfind( "key ", 0 ) == 0 )
      {
        if ( line.substr( 4 ) != key_ )
          throw precondition_error( "checkpoint " + *path_ + " belongs to another search (" + line.substr( 4 ) + ")" );
        keyed = true;
        continue;
      }
      if ( !keyed )
        throw precondition_error( "checkpoint " + *path_ + " has no key line" );
      unsigned size = 0;
      unsigned long long partition = 0, examined = 0;
      const auto w = line.find( " witness=" );
      if ( w == std::string::npos ||
           std::sscanf( line.c_str(), "size=%u partition=%llu examined=%llu", &size, &partition, &examined ) != 3 )
        continue; // a torn last line from an interrupted write
      partition_record rec{ examined, std::nullopt };
      const auto text = line.substr( w + 9 );
      if ( text != "NONE" )
        rec.witness = parse_circuit( text );
      done_[{ size, partition }] = std::move( rec );
    }
    has_key_ = keyed;
  }

  const partition_record* find( std::uint32_t size, std::uint64_t partition ) const
  {
    const auto it = done_.find( { size, partition } );
    return it == done_.end() ? nullptr : &it->second;
  }

  void append( std::uint32_t size, std::uint64_t partition, const partition_record& rec )
  {
    if ( !path_ )
      return;
    std::lock_guard lock( mutex_ );
    std::ofstream out( *path_, std::ios::app );
    if ( !has_key_ )
    {
      out << "# exhaustive search checkpoint\nkey " << key_ << '\n';
      has_key_ = true;
    }
    out << "size=" << size << " partition=" << partition << " examined=" << rec.examined
        << " witness=" << ( rec.witness ? emit_circuit_inline( *rec.witness ) : "NONE" ) << '\n';
    out.flush();
    if ( !out )
      throw std::runtime_error( "cannot write checkpoint " + *path_ );
  }

private:
  std::optional<std::string> path_;
  std::string key_;
  bool has_key_ = false;
  std::map<std::pair<std::uint32_t, std::uint64_t>, partition_record> done_;
  std::mutex mutex_;
};

bool computes( const circuit& c, const truth_table& target )
{
  return nondet_truth_table( c ) == target;
}

/* Size 0: constants, input literals and (nondeterministic) a bare guess. */
partition_record size_zero( const truth_table& target, search_mode mode )
{
  partition_record rec;
  enumerate_canonical( target.arity(), 0, mode, [&]( const circuit& c ) {
    ++rec.examined;
    if ( computes( c, target ) )
    {
      rec.witness = c;
      return false;
    }
    return true;
  } );
  return rec;
}

} // namespace

search_certificate min_size( const truth_table& target, search_mode mode, std::uint32_t s_max,
                             const search_options& options )
{
  const bool nondet = mode == search_mode::nondeterministic;
  const std::uint32_t max_arity = nondet ? 3 : 4;
  if ( target.arity() > max_arity )
    throw limit_error( "target arity " + std::to_string( target.arity() ) + " exceeds " +
                       std::to_string( max_arity ) + " for " + to_string( mode ) + " search" );
  if ( target.arity() == 0 )
    throw precondition_error( "target needs at least one input" );
  if ( s_max > options.hard_limit )
    throw limit_error( "s_max " + std::to_string( s_max ) + " exceeds the hard limit " +
                       std::to_string( options.hard_limit ) );

  search_certificate cert;
  cert.target = target;
  cert.mode = mode;
  cert.s_max = s_max;
  cert.m_bound = nondet ? options.m_bound.value_or( 2 * s_max ) : 0;
  cert.exhaustive = true;

  std::uint32_t target_bits = 0;
  for ( std::uint64_t k = 0; k < target.num_bits(); ++k )
    target_bits |= std::uint32_t( target.get( k ) ) << k;

  std::ostringstream key;
  key << "target=" << target.to_string() << " mode=" << to_string( mode ) << " m_bound=" << cert.m_bound;
  checkpoint_file checkpoint( options.checkpoint, key.str() );
  std::atomic<std::uint64_t> budget_used{ 0 };

  for ( std::uint32_t s = 0; s <= s_max; ++s )
  {
    std::vector<std::optional<partition_record>> results;
    if ( s == 0 )
    {
      if ( const auto* rec = checkpoint.find( 0, 0 ) )
        results.push_back( *rec );
      else
      {
        results.push_back( size_zero( target, mode ) );
        checkpoint.append( 0, 0, *results.back() );
      }
    }
    else
    {
      // each guess slot can introduce at most one guess, so a size-s circuit reads at most 2s of them
      const auto m_bound = std::min( cert.m_bound, 2 * s );
      const auto parts = size_engine( target.arity(), target_bits, nondet, s, m_bound ).partitions();
      results.resize( parts.size() );
      std::vector<std::size_t> todo;
      for ( std::size_t p = 0; p < parts.size(); ++p )
      {
        if ( const auto* rec = checkpoint.find( s, p ) )
          results[p] = *rec;
        else
          todo.push_back( p );
      }
      std::atomic<std::size_t> next{ 0 }, finished{ parts.size() - todo.size() };
      std::mutex mutex;
      std::exception_ptr failure;
      auto worker = [&] {
        try
        {
          size_engine engine( target.arity(), target_bits, nondet, s, m_bound );
          while ( true )
          {
            const auto t = next.fetch_add( 1 );
            if ( t >= todo.size() )
              return;
            if ( options.partition_budget && budget_used.fetch_add( 1 ) >= *options.partition_budget )
              return;
            auto out = engine.run( parts[todo[t]] );
            partition_record rec{ out.examined, std::move( out.witness ) };
            checkpoint.append( s, todo[t], rec );
            {
              std::lock_guard lock( mutex );
              results[todo[t]] = std::move( rec );
            }
            const auto f = ++finished;
            if ( options.progress )
              options.progress( s, f, parts.size() );
          }
        }
        catch ( ... )
        {
          std::lock_guard lock( mutex );
          failure = std::current_exception();
        }
      };
      const auto workers = std::max<std::uint32_t>( 1, options.workers );
      if ( workers == 1 )
        worker();
      else
      {
        std::vector<std::thread> pool;
        for ( std::uint32_t w = 0; w < workers; ++w )
          pool.emplace_back( worker );
        for ( auto& t : pool )
          t.join();
      }
      if ( failure )
        std::rethrow_exception( failure );
    }

    std::uint64_t examined = 0;
    bool complete = true;
    std::optional<circuit> witness;
    for ( auto& r : results )
    {
      if ( !r )
      {
        complete = false;
        continue;
      }
      examined += r->examined;
      if ( r->witness && !witness )
        witness = r->witness;
    }
    cert.examined += examined;
    cert.examined_by_size.push_back( examined );
    if ( witness )
    {
      if ( !computes( *witness, target ) )
        throw std::logic_error( "search witness does not compute the target: " + emit_circuit_inline( *witness ) );
      cert.witness = std::move( witness );
      return cert;
    }
    if ( !complete )
    {
      cert.exhaustive = false;
      return cert;
    }
  }
  return cert;
}

search_certificate min_size_det( const truth_table& target, std::uint32_t s_max, const search_options& options )
{
  return min_size( target, search_mode::deterministic, s_max, options );
}

search_certificate min_size_nondet( const truth_table& target, std::uint32_t s_max, const search_options& options )
{
  return min_size( target, search_mode::nondeterministic, s_max, options );
}

/******************************************************************************
 * Parity tightness                                                           *
 ******************************************************************************/

std::string tightness_result::serialize() const
{
  search_certificate up;
  up.target = lower.target;
  up.mode = search_mode::nondeterministic;
  up.s_max = upper_bound;
  up.m_bound = upper.num_guesses();
  up.witness = upper;
  up.examined = 1;
  up.exhaustive = false;
  return "role=lower " + lower.serialize() + "\nrole=upper " + up.serialize() + "\n";
}

tightness_result verify_parity_tightness( std::uint32_t n, bool allow_long, const search_options& options )
{
  if ( n != 2 && n != 3 )
    throw precondition_error( "tightness is verified for n = 2 and n = 3 only" );
  if ( n == 3 && !allow_long )
    throw precondition_error( "n = 3 runs for a long time; pass the long-run flag to start it" );

  const auto target = truth_table::parity( n );
  const std::uint32_t bound = 3 * ( n - 1 );
  auto upper = build_parity_circuit( n );
  if ( !computes( upper, target ) || upper.size() != bound )
    throw std::logic_error( "parity chain failed revalidation" );

  auto opts = options;
  opts.hard_limit = std::max( opts.hard_limit, bound - 1 );
  auto lower = min_size_nondet( target, bound - 1, opts );
  tightness_result r{ std::move( lower ), std::move( upper ), 0, bound, false };
  if ( r.lower.exhaustive && !r.lower.witness )
    r.lower_bound = bound;
  r.tight = r.lower_bound == r.upper_bound;
  return r;
}

} // namespace ndc
