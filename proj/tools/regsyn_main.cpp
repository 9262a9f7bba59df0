#include <iostream>

#include "regsyn/cli.h"

int main(int argc, char** argv)
{
  return regsyn::cli::run(argc, argv, std::cout, std::cerr);
}
