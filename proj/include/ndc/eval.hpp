#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "circuit.hpp"
#include "truth_table.hpp"

namespace ndc
{

using bit_vector = std::vector<bool>;

struct eval_limits
{
  /*! \brief Largest guess count that is exhausted explicitly (2^24 assignments per point). */
  std::uint32_t max_guesses = 24;
  /*! \brief Largest arity tabulated by `nondet_truth_table`. */
  std::uint32_t max_inputs = 20;
};

/*! \brief Value of the output for the actual assignment `x` and guess assignment `y`. */
bool eval_det( const circuit& c, const bit_vector& x, const bit_vector& y );

/*! \brief 1 iff some guess assignment makes the output 1. */
bool eval_nondet( const circuit& c, const bit_vector& x, const eval_limits& limits = {} );

/*! \brief Same as `eval_nondet` with the actual assignment given as a table index (x1 most significant). */
bool eval_nondet_index( const circuit& c, std::uint64_t x_index, const eval_limits& limits = {} );

truth_table nondet_truth_table( const circuit& c, const eval_limits& limits = {} );

/*! \brief Table over all actual and guess inputs: arity n + m, guesses after the actual inputs. */
truth_table joint_truth_table( const circuit& c, const eval_limits& limits = {} );

/*! \brief Values of every gate (in gate order) for the given assignment. */
std::vector<bool> gate_values( const circuit& c, const bit_vector& x, const bit_vector& y );

bit_vector bits_of_index( std::uint64_t index, std::uint32_t width );

struct circuit_metrics
{
  std::size_t size = 0;
  std::size_t depth = 0;
  /*! \brief Uses as gate operand (each slot counts) plus one for the output designation. */
  std::map<node_ref, std::size_t> fanout;
};

circuit_metrics metrics( const circuit& c );

/*! \brief Longest input-to-node path length (in gates) for every gate. */
std::vector<std::size_t> gate_depths( const circuit& c );

} // namespace ndc
