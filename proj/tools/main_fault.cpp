// Same CLI with the exact counter off by one, for testing that `verify`
// reports mismatches. Built only with the tests.
#include <iostream>

#include <sparsecol/treedp.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  sparsecol::cli::Hooks hooks;
  hooks.count = [](const sparsecol::Graph& g, std::size_t S, const sparsecol::FixedColours& f) {
    return sparsecol::BigInt(sparsecol::count_colourings(g, S, f).exact_value() + 1);
  };
  return sparsecol::cli::run(argc, argv, std::cout, std::cerr, hooks);
}
