#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "margulis/freegroup.hpp"
#include "oracles.hpp"

using namespace margulis;

namespace {
Word W(const std::string& s, int rank = 2) { return word_from_string(s, rank); }
}  // namespace

TEST_CASE("free reduction") {
  CHECK(reduce(W("aA")).empty());
  CHECK(reduce(W("abBa")) == W("aa"));
  CHECK(reduce(W("abBA")).empty());
  oracle::Rand rnd(21);
  for (int i = 0; i < 200; ++i) {
    Word w = rnd.reduced_word(2, 1 + static_cast<int>(rnd.rng() % 8));
    Word prod = w;
    Word winv = inverse(reduce(w));
    prod.insert(prod.end(), winv.begin(), winv.end());
    CHECK(reduce(prod).empty());
    CHECK(reduce(reduce(w)) == reduce(w));  // idempotent
  }
}

TEST_CASE("conjugacy class representatives") {
  CHECK(conj_class(W("baB")) == W("a"));
  CHECK(conj_class(W("ab")) == conj_class(W("ba")));
  CHECK(conj_class(W("ab")) != conj_class(W("BA")));
  CHECK(word_to_string(conj_class(W("BA"))) == "AB");
  CHECK_THROWS_AS(conj_class(W("aA")), Error);
  for (const char* s : {"ab", "aabAB", "bbA"}) {
    Word cls = conj_class(W(s));
    CHECK(is_cyclically_reduced(cls));
  }
}

TEST_CASE("enumeration small counts") {
  auto l1 = enumerate_classes(2, 1);
  REQUIRE(l1.size() == 4);
  CHECK(word_to_string(l1[0]) == "a");
  CHECK(word_to_string(l1[1]) == "A");
  CHECK(word_to_string(l1[2]) == "b");
  CHECK(word_to_string(l1[3]) == "B");

  // 4 length-1 + 4 squares + 4 mixed classes of two rotations each
  auto l2 = enumerate_classes(2, 2);
  CHECK(l2.size() == 12);
}

TEST_CASE("enumeration matches the brute-force oracle") {
  for (int rank : {2, 3}) {
    int max_len = rank == 2 ? 6 : 4;
    auto brute = oracle::classify_brute_force(rank, max_len);
    auto stream = enumerate_classes(rank, max_len);

    std::map<int, std::set<Word>> mine;
    std::set<Word> seen;
    size_t last_len = 0;
    Word last;
    for (const Word& w : stream) {
      CHECK(is_cyclically_reduced(w));
      CHECK(conj_class(w) == w);  // rotation-minimal
      CHECK(seen.insert(w).second);  // no duplicates
      // ordered by length then lexicographically
      if (!last.empty()) {
        CHECK(last_len <= w.size());
        if (last_len == w.size()) CHECK(last < w);
      }
      last = w;
      last_len = w.size();
      mine[static_cast<int>(w.size())].insert(w);
    }
    for (int len = 1; len <= max_len; ++len) {
      REQUIRE(mine[len].size() == brute[len].size());
      CHECK(mine[len] == brute[len]);
    }
  }
}

TEST_CASE("streamed and collected enumeration agree") {
  std::vector<Word> streamed;
  for_each_class(2, 5, [&](const Word& w) { streamed.push_back(w); });
  CHECK(streamed == enumerate_classes(2, 5));
}

TEST_CASE("primitive roots and coprimality") {
  CHECK(primitive_root(W("aaa")).second == 3);
  CHECK(primitive_root(W("aaa")).first == W("a"));
  CHECK(primitive_root(W("abab")).first == W("ab"));
  CHECK(primitive_root(W("ab")).second == 1);
  // conjugating prefix retained
  CHECK(primitive_root(W("baaB")).first == W("baB"));

  CHECK(!coprime(W("a"), W("a")));
  CHECK(!coprime(W("a"), W("aa")));
  CHECK(!coprime(W("a"), W("A")));
  CHECK(!coprime(W("ab"), W("abab")));
  CHECK(coprime(W("a"), W("b")));
  CHECK(coprime(W("ab"), W("ba")));      // conjugate, distinct axes
  CHECK(coprime(W("a"), W("baB")));      // conjugate of a, distinct axis
  CHECK(!coprime(W("ab"), W("BA")));     // inverse class
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(enumerate_classes(0, 3), Error);
  CHECK_THROWS_AS(enumerate_classes(2, 0), Error);
  CHECK_THROWS_AS(word_from_string("xyz?", 2), Error);
  CHECK_THROWS_AS(word_from_string("c", 2), Error);
  CHECK(word_from_string("e", 2).empty());
}
