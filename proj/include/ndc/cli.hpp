#pragma once

#include <string>
#include <vector>

namespace ndc::cli
{

/*! \brief Exit codes of the command-line tool. */
enum exit_code : int
{
  success = 0,
  /*! \brief The checked property does not hold, or the search found nothing. */
  violated = 1,
  usage = 2,
  limit = 3
};

struct command_outcome
{
  int exit_code = success;
  /*! \brief Deterministic report for standard output. */
  std::string report;
  /*! \brief Diagnostics for standard error. */
  std::string error;
  /*! \brief Files written by the command. */
  std::vector<std::string> artifacts;
};

/*! \brief Runs one subcommand; `args` excludes the program name. Never throws. */
command_outcome run( const std::vector<std::string>& args );

} // namespace ndc::cli
