#include <iostream>
#include <string>
#include <vector>

#include "cricrec/interface/cli.h"

int main(int argc, char** argv) {
  return cricrec::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
