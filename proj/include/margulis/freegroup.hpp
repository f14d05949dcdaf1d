#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "margulis/error.hpp"

// Words in the rank-n free group. Letters are coded 0..2n-1 with generator i
// at code 2i and its inverse at 2i+1; lexicographic order on codes gives
// a, a^-1, b, b^-1, ... Conjugacy classes are represented by the
// lexicographically minimal rotation of the cyclic reduction.

namespace margulis {

using Letter = std::int8_t;
using Word = std::vector<Letter>;

inline Letter inverse_letter(Letter l) { return static_cast<Letter>(l ^ 1); }

Word inverse(const Word& w);

// Free reduction: cancels adjacent letter-inverse pairs; idempotent.
Word reduce(const Word& w);

// Strips the maximal conjugating prefix: w = c * core * c^-1 with core
// cyclically reduced. Returns {c, core}.
std::pair<Word, Word> cyclic_reduce(const Word& w);

bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);

// Minimal rotation of the cyclic reduction of w. Rejects words that reduce
// to the identity.
Word conj_class(const Word& w);

// w = root^k with root primitive in the cyclic sense; the conjugating prefix
// is retained so roots compare as group elements. Returns {root, k}.
std::pair<Word, int> primitive_root(const Word& w);

// Neither gamma nor eta is a power of a common element.
bool coprime(const Word& gamma, const Word& eta);

// Calls fn once per conjugacy class with cyclically reduced length <= max_len,
// ordered by length then lexicographically. gamma and gamma^-1 count as
// distinct classes.
void for_each_class(int rank, int max_len, const std::function<void(const Word&)>& fn);

// Same stream collected into a vector.
std::vector<Word> enumerate_classes(int rank, int max_len);

// "a".."z" for generators, "A".."Z" for inverses.
std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s, int rank);

}  // namespace margulis
