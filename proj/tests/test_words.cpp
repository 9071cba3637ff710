#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wordmaps/error.hpp"
#include "wordmaps/whitehead.hpp"
#include "wordmaps/word.hpp"

using namespace wordmaps;
using oracle::xyz;

TEST_CASE("parse: literal examples") {
  Word const w = parse_word("xyXY");
  CHECK(w.length() == 4);
  CHECK(w == commutator(parse_word("x", 25), parse_word("y")));
  CHECK(parse_word("xX").is_identity());
  Word const v = parse_word("x^3 y^2");
  CHECK(v.length() == 5);
  CHECK(std::vector<int>(v.letters().begin(), v.letters().end())
        == std::vector<int>{24, 24, 24, 25, 25});
  CHECK(parse_word("").is_identity());
  CHECK(parse_word("1").is_identity());
  CHECK(parse_word("(ab)^-2", 2) == parse_word("BABA", 2));
  CHECK(parse_word("[a,b]^2", 2).length() == 8);
  CHECK(parse_word("a^-1") == parse_word("A"));
}

TEST_CASE("parse: errors carry a position") {
  CHECK_THROWS_AS(parse_word("a^"), ParseError);
  CHECK_THROWS_AS(parse_word("(ab"), ParseError);
  CHECK_THROWS_AS(parse_word("[a b]"), ParseError);
  CHECK_THROWS_AS(parse_word("a?"), ParseError);
  CHECK_THROWS_AS(parse_word("c", 2), ParseError);
  try {
    parse_word("ab)");
    FAIL("expected ParseError");
  } catch (ParseError const& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("word algebra examples") {
  CHECK(power(xyz("x"), 3) == xyz("xxx"));
  CHECK(multiply(xyz("xy"), xyz("Yx")) == xyz("xx"));
  CHECK(power(xyz("[x,y]"), -1) == xyz("yxYX"));
  CHECK(invert(xyz("xyy")) == xyz("YYX"));
  CHECK(power(xyz("xy"), 0).is_identity());
  CHECK_THROWS_AS(Word({3}, 2), ArgumentError);
  CHECK_THROWS_AS(Word({0}, 2), ArgumentError);
}

TEST_CASE("cyclic_reduce examples") {
  auto r = cyclic_reduce(xyz("xyX"));
  CHECK(r.core == xyz("y"));
  CHECK(r.conjugator == xyz("x"));
  r = cyclic_reduce(xyz("[x,y]"));
  CHECK(r.core == xyz("[x,y]"));
  CHECK(r.conjugator.is_identity());
  r = cyclic_reduce(Word::identity(2));
  CHECK(r.core.is_identity());
  CHECK(r.conjugator.is_identity());
}

TEST_CASE("substitute examples") {
  std::vector<Word> abc{xyz("x", 3), xyz("y", 3), xyz("z", 3)};
  CHECK(substitute(xyz("xzxZZ", 3), abc) == xyz("xzxZZ", 3));
  for (int n = 1; n <= 4; ++n) {
    std::vector<Word> im{power(xyz("x"), n), xyz("y")};
    CHECK(substitute(xyz("xy"), im) == multiply(power(xyz("x"), n), xyz("y")));
  }
  std::vector<Word> aa{xyz("x", 1), xyz("X", 1)};
  CHECK(substitute(xyz("x^3 y^2"), aa) == xyz("x", 1));
  CHECK_THROWS_AS(substitute(xyz("xy"), std::span<Word const>(aa.data(), 1)), ArgumentError);
}

TEST_CASE("maximal_root examples") {
  auto r = maximal_root(xyz("x^6"));
  CHECK(r.root == xyz("x"));
  CHECK(r.exponent == 6);
  r = maximal_root(xyz("xyxy"));
  CHECK(r.root == xyz("xy"));
  CHECK(r.exponent == 2);
  r = maximal_root(xyz("[x,y]"));
  CHECK(r.root == xyz("[x,y]"));
  CHECK(r.exponent == 1);
  r = maximal_root(xyz("y(xxy)^3Y"));
  CHECK(r.root == xyz("yxxyY"));
  CHECK(r.exponent == 3);
  CHECK_THROWS_AS(maximal_root(Word::identity(2)), ArgumentError);
}

TEST_CASE("is_dth_power_in_free examples") {
  CHECK_FALSE(is_dth_power_in_free(xyz("x^2 y^2"), 2));
  CHECK(is_dth_power_in_free(xyz("xyxy"), 2));
  CHECK(is_dth_power_in_free(Word::identity(2), 5));
  CHECK(is_dth_power_in_free(xyz("x^6"), 3));
  CHECK_FALSE(is_dth_power_in_free(xyz("x^6"), 4));
}

TEST_CASE("compact relabels jointly") {
  std::vector<Word> ws{parse_word("x^2 z"), parse_word("z")};
  auto c = compact(ws);
  CHECK(c[0] == parse_word("aab", 2));
  CHECK(c[1] == parse_word("b", 2));
  CHECK(compact(parse_word("[x,y]")) == parse_word("[a,b]", 2));
  CHECK(used_generators(ws) == std::vector<unsigned>{24, 26});
}

TEST_CASE("Whitehead examples") {
  auto swap = WhiteheadMove::type_one({1, 0}, {1, 1});
  CHECK(swap.apply(xyz("[x,y]")) == xyz("[y,x]"));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    Word w = oracle::random_word(rng, 2, 12);
    CHECK(WhiteheadMove::identity(2).apply(w) == w);
  }
  auto moves   = enumerate_whitehead_moves(2);
  auto type_ii = enumerate_multiplier_moves(2);
  std::size_t type_i = 0;
  for (auto const& m : moves) {
    type_i += m.kind() == WhiteheadMove::Kind::permutation ? 1 : 0;
  }
  CHECK(type_i == 8);
  CHECK(type_ii.size() == 12);
  CHECK(moves.size() == 20);
  CHECK(enumerate_whitehead_moves(3).size() == 48 + 6 * 15);
  for (auto const& m : moves) {
    CHECK(is_automorphism(m));
  }
}

TEST_CASE("property: reduction matches the naive oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto raw = oracle::random_letters(rng, 3, 30);
    Word w(raw, 3);
    auto expect = oracle::naive_reduce(raw);
    CHECK(std::vector<int>(w.letters().begin(), w.letters().end()) == expect);
    for (std::size_t j = 0; j + 1 < w.length(); ++j) {
      CHECK(w.letters()[j] != -w.letters()[j + 1]);
    }
  }
}

TEST_CASE("property: parse and print round trip") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    Word w = oracle::random_word(rng, 4, 20);
    CHECK(parse_word(w.to_string(), 4) == w);
    CHECK(parse_word(oracle::spell(oracle::random_letters(rng, 4, 0)), 4).is_identity());
  }
}

TEST_CASE("property: group laws on random words up to length 40") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    Word a = oracle::random_word(rng, 3, 40);
    Word b = oracle::random_word(rng, 3, 40);
    Word c = oracle::random_word(rng, 3, 40);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * invert(a)).is_identity());
    CHECK((invert(a) * a).is_identity());
    auto cr = cyclic_reduce(a);
    CHECK(cr.conjugator * cr.core * invert(cr.conjugator) == a);
  }
}

namespace {
  // Largest b with core = v^b by trying every period of the cyclic core.
  std::pair<Word, unsigned> periodic_root(Word const& w) {
    auto letters = std::vector<int>(w.letters().begin(), w.letters().end());
    std::size_t k = 0;
    while (2 * k + 1 < letters.size() && letters[k] == -letters[letters.size() - 1 - k]) {
      ++k;
    }
    std::vector<int> c(letters.begin(), letters.begin() + static_cast<long>(k));
    std::vector<int> core(letters.begin() + static_cast<long>(k),
                          letters.end() - static_cast<long>(k));
    std::size_t n = core.size();
    for (std::size_t p = 1; p <= n; ++p) {
      if (n % p != 0) {
        continue;
      }
      bool ok = true;
      for (std::size_t i = p; i < n && ok; ++i) {
        ok = core[i] == core[i - p];
      }
      if (ok) {
        std::vector<int> r = c;
        r.insert(r.end(), core.begin(), core.begin() + static_cast<long>(p));
        for (std::size_t i = k; i > 0; --i) {
          r.push_back(-c[i - 1]);
        }
        return {Word(r, w.rank()), static_cast<unsigned>(n / p)};
      }
    }
    return {w, 1};
  }
}  // namespace

TEST_CASE("property: maximal_root against a period oracle") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 400; ++i) {
    Word u = oracle::random_word(rng, 2, 6);
    if (u.is_identity()) {
      continue;
    }
    Word w = power(u, 1 + static_cast<long long>(rng() % 4));
    auto r = maximal_root(w);
    CHECK(power(r.root, r.exponent) == w);
    CHECK(maximal_root(r.root).exponent == 1);
    auto [root, b] = periodic_root(w);
    CHECK(r.exponent == b);
    CHECK(r.root == root);
  }
}

TEST_CASE("property: Whitehead moves are homomorphisms") {
  std::mt19937_64 rng(15);
  for (unsigned rank : {2u, 3u}) {
    auto moves = enumerate_whitehead_moves(rank);
    for (auto const& m : moves) {
      for (int i = 0; i < 5; ++i) {
        Word a = oracle::random_word(rng, rank, 10);
        Word b = oracle::random_word(rng, rank, 10);
        CHECK(apply_whitehead(m, a * b) == apply_whitehead(m, a) * apply_whitehead(m, b));
      }
    }
  }
}

TEST_CASE("property: identity substitution") {
  std::mt19937_64 rng(16);
  std::vector<Word> basis{Word::generator(1, 3), Word::generator(2, 3), Word::generator(3, 3)};
  for (int i = 0; i < 100; ++i) {
    Word w = oracle::random_word(rng, 3, 20);
    CHECK(substitute(w, basis) == w);
  }
}
