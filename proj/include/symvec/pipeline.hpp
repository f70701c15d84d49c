#pragma once

#include <filesystem>
#include <vector>

#include "symvec/corpus.hpp"
#include "symvec/frontend.hpp"
#include "symvec/symex.hpp"

namespace symvec {

/// Expands directories recursively to their `.mc` and `.c` files, sorted by
/// path; plain file arguments are kept in the given order.
std::vector<std::filesystem::path> collect_sources(const std::vector<std::filesystem::path>& inputs);
std::vector<Program> parse_sources(const std::vector<std::filesystem::path>& files);

/// Traces of every procedure, in program then procedure order.
std::vector<Trace> trace_programs(const std::vector<Program>& programs, std::size_t budget,
                                  unsigned threads = 1);

Corpus encode_traces(const std::vector<Trace>& traces, const AbstractionConfig& cfg);

/// trace_programs followed by encode_traces; provenance records the config
/// id and program names.
Corpus build_corpus(const std::vector<Program>& programs, const AbstractionConfig& cfg,
                    unsigned threads = 1);

}  // namespace symvec
