#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "truth_table.hpp"

namespace ndc
{

enum class search_mode
{
  deterministic,
  nondeterministic
};

std::string to_string( search_mode mode );

/*! \brief Outcome of an exhaustive size search. */
struct search_certificate
{
  truth_table target;
  search_mode mode = search_mode::deterministic;
  std::uint32_t s_max = 0;
  /*! \brief Largest number of guess inputs a candidate could use. */
  std::uint32_t m_bound = 0;
  std::optional<circuit> witness;
  std::uint64_t examined = 0;
  /*! \brief Every size below the witness (or up to s_max when there is none) was covered. */
  bool exhaustive = false;
  /*! \brief Candidates examined at each size 0, 1, ... that was searched. */
  std::vector<std::uint64_t> examined_by_size;

  /*! \brief `target=<bits> mode=<det|ndet> s_max=<s> m_bound=<m> exhaustive=<bool> examined=<n> witness=<inline|NONE>`. */
  std::string serialize() const;
};

/*! \brief Limits and execution settings shared by the searches. */
struct search_options
{
  /*! \brief Largest gate count any search may enumerate. */
  std::uint32_t hard_limit = 6;
  /*! \brief Guess-input bound; 2 * s_max when empty (every slot can introduce one guess). */
  std::optional<std::uint32_t> m_bound;
  std::uint32_t workers = 1;
  /*! \brief File recording finished partitions; existing entries are skipped on the next run. */
  std::optional<std::string> checkpoint;
  /*! \brief Stop after this many newly searched partitions (the certificate is then not exhaustive). */
  std::optional<std::uint64_t> partition_budget;
  /*! \brief Called after every finished partition with (size, partitions done, partitions total). */
  std::function<void( std::uint32_t, std::uint64_t, std::uint64_t )> progress;
};

/*! \brief Streams every canonical circuit with `n` actual inputs and exactly `s` gates.
 *
 * Gates are created in order; each operand is a constant, an actual input, an earlier gate
 * or (nondeterministic mode) a guess input, guesses being numbered in order of first use;
 * functions are the eight nondegenerate U2 functions in the order AND, OR, NAND, NOR, ANDNY,
 * ANDNX, ORNY, ORNX; symmetric functions take operands in non-decreasing order (constants,
 * inputs, guesses, gates); every gate but the last feeds another gate, and the last gate is
 * the output. With `s` = 0 the outputs are the constants, each input in both polarities and
 * (nondeterministic mode) y1. Returning false from `visit` stops the stream.
 *
 * \return the number of circuits visited.
 */
std::uint64_t enumerate_canonical( std::uint32_t n, std::uint32_t s, search_mode mode,
                                   const std::function<bool( const circuit& )>& visit, const search_options& options = {} );

/*! \brief Smallest deterministic U2 circuit for `target` (arity at most 4) with at most `s_max` gates. */
search_certificate min_size_det( const truth_table& target, std::uint32_t s_max, const search_options& options = {} );

/*! \brief Smallest nondeterministic U2 circuit for `target` (arity at most 3) with at most `s_max` gates. */
search_certificate min_size_nondet( const truth_table& target, std::uint32_t s_max, const search_options& options = {} );

/*! \brief Shared implementation of the two searches above. */
search_certificate min_size( const truth_table& target, search_mode mode, std::uint32_t s_max,
                             const search_options& options = {} );

struct tightness_result
{
  /*! \brief Nonexistence certificate below 3(n - 1) gates (nondeterministic). */
  search_certificate lower;
  /*! \brief The 3(n - 1)-gate chain, revalidated. */
  circuit upper;
  /*! \brief Proven lower bound on the size (0 when the search was interrupted). */
  std::uint32_t lower_bound = 0;
  std::uint32_t upper_bound = 0;
  bool tight = false;

  /*! \brief Two certificate lines, `role=lower ...` and `role=upper ...`. */
  std::string serialize() const;
};

/*! \brief Certifies size^ndc(Parity_n) = 3(n - 1) for n = 2, or n = 3 when `allow_long` is set. */
tightness_result verify_parity_tightness( std::uint32_t n, bool allow_long, const search_options& options = {} );

} // namespace ndc
