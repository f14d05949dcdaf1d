#include "margulis/freegroup.hpp"

#include <algorithm>
#include <cmath>

namespace margulis {

Word inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inverse_letter(*it));
  return r;
}

Word reduce(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (Letter l : w) {
    if (!r.empty() && r.back() == inverse_letter(l))
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

std::pair<Word, Word> cyclic_reduce(const Word& w) {
  Word core = reduce(w);
  Word prefix;
  while (core.size() >= 2 && core.front() == inverse_letter(core.back())) {
    prefix.push_back(core.front());
    core.erase(core.begin());
    core.pop_back();
  }
  return {prefix, core};
}

bool is_reduced(const Word& w) {
  for (size_t i = 1; i < w.size(); ++i)
    if (w[i] == inverse_letter(w[i - 1])) return false;
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_reduced(w)) return false;
  if (w.size() >= 2 && w.front() == inverse_letter(w.back())) return false;
  return true;
}

namespace {

Word rotate(const Word& w, size_t k) {
  Word r;
  r.reserve(w.size());
  r.insert(r.end(), w.begin() + k, w.end());
  r.insert(r.end(), w.begin(), w.begin() + k);
  return r;
}

bool is_minimal_rotation(const Word& w) {
  for (size_t k = 1; k < w.size(); ++k) {
    for (size_t i = 0; i < w.size(); ++i) {
      Letter a = w[i];
      Letter b = w[(i + k) % w.size()];
      if (b < a) return false;
      if (b > a) break;
    }
  }
  return true;
}

}  // namespace

Word conj_class(const Word& w) {
  Word core = cyclic_reduce(w).second;
  if (core.empty()) raise(errc::empty_word, "conjugacy class of the identity");
  Word best = core;
  for (size_t k = 1; k < core.size(); ++k) {
    Word r = rotate(core, k);
    if (r < best) best = r;
  }
  return best;
}

std::pair<Word, int> primitive_root(const Word& w) {
  auto [prefix, core] = cyclic_reduce(w);
  if (core.empty()) raise(errc::empty_word, "primitive root of the identity");
  size_t m = core.size();
  size_t p = m;
  for (size_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    bool periodic = true;
    for (size_t i = 0; i + d < m && periodic; ++i)
      if (core[i] != core[i + d]) periodic = false;
    if (periodic) {
      p = d;
      break;
    }
  }
  Word root(core.begin(), core.begin() + p);
  Word conj = prefix;
  conj.insert(conj.end(), root.begin(), root.end());
  Word inv_prefix = inverse(prefix);
  conj.insert(conj.end(), inv_prefix.begin(), inv_prefix.end());
  return {reduce(conj), static_cast<int>(m / p)};
}

bool coprime(const Word& gamma, const Word& eta) {
  if (reduce(gamma).empty() || reduce(eta).empty()) return false;
  Word rg = primitive_root(gamma).first;
  Word re = primitive_root(eta).first;
  return rg != re && rg != reduce(inverse(re));
}

namespace {

// DFS over cyclically reduced words of a fixed length in lex order. Any
// letter smaller than the first letter would yield a smaller rotation, so
// those subtrees are pruned; full minimality is checked at the leaves.
void enumerate_length(int rank, int len, Word& buf,
                      const std::function<void(const Word&)>& fn) {
  int nletters = 2 * rank;
  if (static_cast<int>(buf.size()) == len) {
    if (buf.size() >= 2 && buf.front() == inverse_letter(buf.back())) return;
    if (is_minimal_rotation(buf)) fn(buf);
    return;
  }
  int lo = buf.empty() ? 0 : buf.front();
  for (int l = lo; l < nletters; ++l) {
    Letter cur = static_cast<Letter>(l);
    if (!buf.empty() && cur == inverse_letter(buf.back())) continue;
    buf.push_back(cur);
    enumerate_length(rank, len, buf, fn);
    buf.pop_back();
  }
}

}  // namespace

void for_each_class(int rank, int max_len, const std::function<void(const Word&)>& fn) {
  if (rank < 1) raise(errc::bad_argument, "rank must be at least 1");
  if (rank > 26) raise(errc::bad_argument, "rank capped at 26");
  if (max_len < 1) raise(errc::bad_argument, "max_len must be at least 1");
  // (2n-1)^L words get visited; refuse censuses that cannot finish
  if (max_len * std::log(2.0 * rank - 1.0) > std::log(5e8))
    raise(errc::bad_argument,
          "census of (2 rank - 1)^max_len words is too large; lower max_len");
  for (int len = 1; len <= max_len; ++len) {
    Word buf;
    buf.reserve(len);
    enumerate_length(rank, len, buf, fn);
  }
}

std::vector<Word> enumerate_classes(int rank, int max_len) {
  std::vector<Word> out;
  for_each_class(rank, max_len, [&](const Word& w) { out.push_back(w); });
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) {
    char base = (l & 1) ? 'A' : 'a';
    s.push_back(static_cast<char>(base + (l >> 1)));
  }
  return s;
}

Word word_from_string(const std::string& s, int rank) {
  if (s == "e") return {};
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    int gen, inv;
    if (c >= 'a' && c <= 'z') {
      gen = c - 'a';
      inv = 0;
    } else if (c >= 'A' && c <= 'Z') {
      gen = c - 'A';
      inv = 1;
    } else {
      raise(errc::bad_argument, std::string("bad letter '") + c + "' in word");
    }
    if (gen >= rank) raise(errc::bad_argument, std::string("letter '") + c + "' exceeds rank");
    w.push_back(static_cast<Letter>(2 * gen + inv));
  }
  return w;
}

}  // namespace margulis
