#pragma once

#include <string>
#include <vector>

#include "symvec/abstraction.hpp"

namespace symvec {

using Word = std::string;
using Sentence = std::vector<Word>;

/// Single-word surface form of a token: `foo`, `alloc_$NEQ_0`, `$RET_ENOMEM`,
/// `!->baz`, `?->dev->ready`, `$START`, `$END`, `$ERR`.
Word encode_token(const AbstractToken& tok);

/// Encodes a token list, dropping call-derived tokens whose encoded callee is
/// a stop word.
Sentence encode_trace(const std::vector<AbstractToken>& tokens, const AbstractionConfig& cfg);

std::string join_sentence(const Sentence& s);

}  // namespace symvec
