#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "eval.hpp"

namespace ndc
{

struct cnf_literal
{
  /*! \brief 1-based variable id. */
  std::uint32_t variable;
  bool positive;

  friend bool operator==( const cnf_literal&, const cnf_literal& ) = default;
};

using cnf_clause = std::vector<cnf_literal>;

/*! \brief A CNF read as a nondeterministic formula.
 *
 * Variables 1..num_actual are the actual inputs in order, the next num_guess
 * variables are guesses. The formula accepts x iff some guess assignment
 * satisfies every clause.
 */
struct cnf_formula
{
  std::uint32_t num_actual = 0;
  std::uint32_t num_guess = 0;
  std::vector<cnf_clause> clauses;

  std::uint32_t num_variables() const { return num_actual + num_guess; }
  std::size_t max_width() const;

  friend bool operator==( const cnf_formula&, const cnf_formula& ) = default;
};

/*! \brief Clauses for z <-> f(a, b) over the positions 0 (z), 1 (a) and 2 (b).
 *
 * These are a minimum set of prime implicates, so AND gives (!z a) (!z b) (z !a !b).
 * Every clause mentions z.
 */
struct template_literal
{
  std::uint8_t position;
  bool positive;
};
using clause_template = std::vector<std::vector<template_literal>>;

const clause_template& tseitin_template( gate_function f );

/*! \brief Tseitin encoding with one guess variable per gate (variable n + k for gate k, 1-based).
 *
 * Constant operands are substituted into the clauses. The output is asserted by a unit
 * clause; a constant-1 output asserts nothing and a constant-0 output becomes a pair of
 * contradictory unit clauses on the first guess variable (which is added when the
 * circuit has no gates). Requires a circuit without guess inputs.
 */
cnf_formula tseitin_cnf( const circuit& c );

/*! \brief Number of guess assignments satisfying every clause under x. */
std::uint64_t cnf_count_models( const cnf_formula& f, const bit_vector& x, const eval_limits& limits = {} );

/*! \brief 1 iff some guess assignment satisfies every clause under x. */
bool cnf_eval_nondet( const cnf_formula& f, const bit_vector& x, const eval_limits& limits = {} );

truth_table cnf_truth_table( const cnf_formula& f, const eval_limits& limits = {} );

/*! \brief DIMACS text; when `source` is given the gate-to-variable map is recorded in comments. */
std::string write_dimacs( const cnf_formula& f, const circuit* source = nullptr );

/*! \brief Reads DIMACS; the `c actual 1..n` comment fixes the split (all variables are actual otherwise). */
cnf_formula read_dimacs( std::string_view text );

/*! \brief Operand slot of a gate, naming the wire that enters it. */
using edge = std::pair<std::uint32_t, operand_side>;

struct edge_cut
{
  std::set<edge> edges;
  std::uint32_t target_depth = 1;
};

/*! \brief Longest path, in gates, through the output cone with cut slots read as leaves. */
std::size_t residual_depth( const circuit& c, const std::set<edge>& cut );

/*! \brief Greedy edge cut down to `target_depth`.
 *
 * While the residual depth is too large, cuts the gate-to-gate wire that lies on the most
 * longest paths; ties prefer the wire splitting those paths most evenly, then the lowest
 * gate, then the left operand.
 */
edge_cut find_depth_cut( const circuit& c, std::uint32_t target_depth );

/*! \brief Formula with one guess per cut wire and one for the output.
 *
 * The output is a balanced AND over XNOR(y_e, F_u) for every cut wire e leaving u,
 * XNOR(y_out, F_root) and y_out itself, where F_u unfolds the residual subcircuit of u
 * into a tree that reads guesses at cut wires. Guesses follow the sorted cut, y_out is last.
 */
circuit formula_convert( const circuit& c, const edge_cut& cut );

} // namespace ndc
