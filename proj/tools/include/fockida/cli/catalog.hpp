#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fockida/symbol.hpp"

namespace fockida::cli {

// Parsed symbol description, e.g. "bump(0,0,1)" or "conj(random(7,16,2))".
struct SymbolSpec {
  std::string name;       // canonical text form
  std::string kind;       // z, zbar, abs2, bump, cbump, radstep, random, zbar_gauss
  std::vector<double> params;
  bool conjugated = false;
  Growth growth = Growth::Bounded;
  std::string expectation;  // expected Hankel behaviour, for the catalog listing

  Symbol build() const;
  SymbolSpec conj() const;
};

// Grammar: kind | kind(a, b, ...) | conj(spec). "random" without arguments takes `default_seed`,
// 16 terms and bandwidth 2. Throws InvalidInput on malformed text or wrong arity.
SymbolSpec parse_symbol(const std::string& text, std::uint64_t default_seed = 7);

std::vector<SymbolSpec> catalog(std::uint64_t seed = 7);

// Samples the built symbol against its declared growth class.
GrowthCheck verify_growth(const SymbolSpec& spec, double radius = 8.0);

}  // namespace fockida::cli
