#ifndef WORDMAPS_WHITEHEAD_HPP_
#define WORDMAPS_WHITEHEAD_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "wordmaps/word.hpp"

namespace wordmaps {

  // A Whitehead automorphism of F_r, stored by the images of the basis.
  //
  // Type I:  x_i -> x_{perm[i]}^{sign[i]}.
  // Type II: for a multiplier letter a and a set S of letters avoiding a and
  //          a^-1, every generator x other than a^{+-1} is sent to
  //          [x^-1 in S ? a^-1 : 1] x [x in S ? a : 1], and a is fixed.
  class WhiteheadMove {
   public:
    enum class Kind { permutation, multiplier };

    // perm is 0-based, signs are +1/-1.
    static WhiteheadMove type_one(std::vector<unsigned> perm,
                                  std::vector<int>      signs);

    // `subset` is a bitmask over signed letters: bit 2(i-1) is x_i and bit
    // 2(i-1)+1 is x_i^-1.  Bits for the multiplier's generator must be clear.
    static WhiteheadMove type_two(letter_type   multiplier,
                                  std::uint64_t subset,
                                  unsigned      rank);

    static WhiteheadMove identity(unsigned rank) {
      std::vector<unsigned> perm(rank);
      for (unsigned i = 0; i < rank; ++i) {
        perm[i] = i;
      }
      return type_one(std::move(perm), std::vector<int>(rank, 1));
    }

    Kind kind() const noexcept {
      return _kind;
    }

    unsigned rank() const noexcept {
      return static_cast<unsigned>(_images.size());
    }

    std::vector<Word> const& images() const noexcept {
      return _images;
    }

    // Throws ArgumentError if w.rank() exceeds the move's rank.  The result
    // has the move's rank.
    Word apply(Word const& w) const;

    std::string to_string() const;

   private:
    WhiteheadMove(Kind kind, std::vector<Word> images, std::string label)
        : _kind(kind), _images(std::move(images)), _label(std::move(label)) {}

    Kind              _kind;
    std::vector<Word> _images;
    std::string       _label;
  };

  inline Word apply_whitehead(WhiteheadMove const& move, Word const& w) {
    return move.apply(w);
  }

  // All r! 2^r type I moves (identity included) followed by all type II moves
  // with non-empty S, 2r (4^(r-1) - 1) of them.
  std::vector<WhiteheadMove> enumerate_whitehead_moves(unsigned rank);

  // Only the type II moves of enumerate_whitehead_moves.
  std::vector<WhiteheadMove> enumerate_multiplier_moves(unsigned rank);

  // True iff the images of the basis generate F_r.
  bool is_automorphism(WhiteheadMove const& move);

}  // namespace wordmaps

#endif  // WORDMAPS_WHITEHEAD_HPP_
