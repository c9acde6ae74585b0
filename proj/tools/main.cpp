#include <iostream>
#include <string>
#include <vector>

#include "ndc/cli.hpp"

int main( int argc, char** argv )
{
  const auto outcome = ndc::cli::run( std::vector<std::string>( argv + 1, argv + argc ) );
  std::cout << outcome.report;
  std::cerr << outcome.error;
  return outcome.exit_code;
}
