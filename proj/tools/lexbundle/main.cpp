#include <iostream>

#include "lexbundle/cli.hpp"

int main(int argc, char** argv) {
  return lexbundle::cli::run(argc, argv, std::cout, std::cerr);
}
