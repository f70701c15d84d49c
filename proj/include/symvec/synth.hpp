#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "symvec/bench.hpp"

namespace symvec {

struct SynthOptions {
  std::size_t procedures = 20000;
  std::size_t pairs_per_category = 6;
  std::size_t noise_functions = 150;
  std::size_t files = 20;
  /// Noise calls separating the two halves of a dataflow pair; above the
  /// training window so only the dataflow words link them.
  std::size_t min_gap = 11;
  std::size_t max_gap = 14;
  std::uint64_t seed = 7;
};

struct SynthFile {
  std::string name;
  std::string text;
};

/// Procedures that plant eight analogy categories, each a family of function
/// pairs with a fixed usage pattern, among calls to unrelated helpers.
struct SynthBenchmark {
  std::vector<SynthFile> files;
  AnalogySuite suite;

  std::vector<Program> parse() const;
};

SynthBenchmark generate_synthetic(const SynthOptions& opts);
/// Writes the sources plus `suite.tsv` into `dir`, creating it if needed.
void write_synthetic(const SynthBenchmark& bench, const std::filesystem::path& dir);
void write_suite(std::ostream& os, const AnalogySuite& suite);

}  // namespace symvec
