#include <iostream>

#include "primpair_cli.hpp"

int main(int argc, char** argv) {
  return primpair::cli::main_entry(argc, argv, std::cout, std::cerr);
}
