#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skewca/configuration.hpp"
#include "skewca/symbols.hpp"

namespace skewca::testing {

template <Symbol S>
S random_symbol(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, SymbolTraits<S>::kCount - 1);
  return SymbolTraits<S>::from_index(d(rng));
}

template <Symbol S>
Word<S> random_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  Word<S> w(len(rng));
  for (auto& s : w) s = random_symbol<S>(rng);
  return w;
}

template <Symbol S>
Configuration<S> random_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> origin(-6, 6);
  return Configuration<S>(random_word<S>(rng, 1, 3), random_word<S>(rng, 0, 8),
                          random_word<S>(rng, 1, 3), origin(rng));
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(SKEWCA_FIXTURE_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct FixtureTable {
  std::string rule;
  std::string config;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<std::string> rows;
};

inline std::vector<FixtureTable> read_orbit_tables() {
  std::istringstream in(read_fixture("orbit_tables.txt"));
  std::vector<FixtureTable> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto space = line.find(' ');
    const std::string key = line.substr(0, space);
    const std::string value = space == std::string::npos ? "" : line.substr(space + 1);
    if (key == "rule") {
      out.push_back({value, "", 0, 0, {}});
    } else if (key == "config") {
      out.back().config = value;
    } else if (key == "window") {
      const auto colon = value.find(':');
      out.back().lo = std::stoll(value.substr(0, colon));
      out.back().hi = std::stoll(value.substr(colon + 1));
    } else if (key != "steps") {
      out.back().rows.push_back(line);
    }
  }
  return out;
}

}  // namespace skewca::testing
