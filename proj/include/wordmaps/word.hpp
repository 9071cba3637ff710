#ifndef WORDMAPS_WORD_HPP_
#define WORDMAPS_WORD_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordmaps {

  // Letters are signed generator indices: +i is x_i and -i is its inverse,
  // for 1 <= i <= ambient rank.
  using letter_type = int;

  constexpr unsigned max_rank = 26;

  // A freely reduced element of the free group F_r.
  //
  // Values are immutable; every operation returns a fresh Word.  The ambient
  // rank only records which free group the word lives in, it plays no part in
  // equality of the letter sequences except through operator==.
  class Word {
   public:
    Word() : Word(std::vector<letter_type>{}, 1) {}

    // Freely reduces `letters`.  Throws ArgumentError if a letter is zero or
    // exceeds `rank`, or if rank is outside [1, max_rank].
    Word(std::vector<letter_type> letters, unsigned rank);

    static Word identity(unsigned rank) {
      return Word({}, rank);
    }

    static Word generator(unsigned index, unsigned rank);

    unsigned rank() const noexcept {
      return _rank;
    }

    std::span<letter_type const> letters() const noexcept {
      return _letters;
    }

    std::size_t length() const noexcept {
      return _letters.size();
    }

    bool is_identity() const noexcept {
      return _letters.empty();
    }

    // Largest generator index used, 0 for the identity.
    unsigned max_generator() const noexcept;

    Word with_rank(unsigned rank) const;

    // Lowercase letters for generators, uppercase for inverses, "1" for the
    // identity.
    std::string to_string() const;

    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const& a, Word const& b) {
      if (auto c = a._rank <=> b._rank; c != 0) {
        return c;
      }
      if (auto c = a._letters.size() <=> b._letters.size(); c != 0) {
        return c;
      }
      return a._letters <=> b._letters;
    }

   private:
    std::vector<letter_type> _letters;
    unsigned                 _rank;
  };

  // Parses the word grammar:
  //
  //   word   := term { term }
  //   term   := atom [ '^' int ]
  //   atom   := letter | '(' word ')' | '[' word ',' word ']' | '1'
  //   int    := [ '-' ] digit { digit }
  //
  // 'a'..'z' are x_1..x_26, uppercase is the inverse, [u,v] = u v u^-1 v^-1.
  // Whitespace is ignored and the empty string is the identity.  When `rank`
  // is absent it defaults to the largest generator index mentioned (at least
  // one).  Throws ParseError.
  Word parse_word(std::string_view text,
                  std::optional<unsigned> rank = std::nullopt);

  Word multiply(Word const& a, Word const& b);
  Word invert(Word const& a);
  Word power(Word const& a, long long exponent);
  Word commutator(Word const& a, Word const& b);

  inline Word operator*(Word const& a, Word const& b) {
    return multiply(a, b);
  }

  struct CyclicReduction {
    Word core;
    Word conjugator;  // w == conjugator * core * conjugator^-1
  };

  CyclicReduction cyclic_reduce(Word const& w);

  // Image of w under x_i -> images[i-1].  Requires w.rank() == images.size()
  // and all images to share a rank; throws ArgumentError otherwise.
  Word substitute(Word const& w, std::span<Word const> images);

  struct Root {
    Word     root;
    unsigned exponent;
  };

  // w == power(root, exponent) with root not a proper power.  Throws
  // ArgumentError on the identity.
  Root maximal_root(Word const& w);

  bool is_dth_power_in_free(Word const& w, unsigned d);

  // Sorted generator indices occurring in any of the words.
  std::vector<unsigned> used_generators(std::span<Word const> words);

  // Relabels the generators used by `words` jointly as x_1..x_m in
  // increasing order, m = max(1, number used).  This is a basis permutation
  // followed by restriction to the free factor spanned by the used letters,
  // so "[x,y]" becomes the commutator of the first two generators of F_2.
  std::vector<Word> compact(std::span<Word const> words);

  inline Word compact(Word const& w) {
    return compact(std::span<Word const>(&w, 1)).front();
  }

  // Letter helpers.
  constexpr unsigned generator_of(letter_type l) noexcept {
    return static_cast<unsigned>(l < 0 ? -l : l);
  }

  char letter_char(letter_type l);

}  // namespace wordmaps

#endif  // WORDMAPS_WORD_HPP_
