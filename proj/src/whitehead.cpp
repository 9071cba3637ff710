#include "wordmaps/whitehead.hpp"

#include <algorithm>
#include <numeric>

#include "wordmaps/core_graph.hpp"
#include "wordmaps/error.hpp"

namespace wordmaps {

  namespace {
    std::uint64_t letter_bit(letter_type l) {
      unsigned g = generator_of(l) - 1;
      return std::uint64_t{1} << (2 * g + (l < 0 ? 1 : 0));
    }
  }  // namespace

  WhiteheadMove WhiteheadMove::type_one(std::vector<unsigned> perm,
                                        std::vector<int>      signs) {
    unsigned r = static_cast<unsigned>(perm.size());
    if (r == 0 || signs.size() != r) {
      throw ArgumentError("type I move: permutation and signs must have equal "
                          "positive length");
    }
    std::vector<unsigned> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (unsigned i = 0; i < r; ++i) {
      if (sorted[i] != i) {
        throw ArgumentError("type I move: not a permutation");
      }
    }
    std::vector<Word> images;
    std::string       label = "I:";
    for (unsigned i = 0; i < r; ++i) {
      if (signs[i] != 1 && signs[i] != -1) {
        throw ArgumentError("type I move: signs must be +1 or -1");
      }
      letter_type l = signs[i] * static_cast<letter_type>(perm[i] + 1);
      images.emplace_back(std::vector<letter_type>{l}, r);
      label.push_back(letter_char(l));
    }
    return WhiteheadMove(Kind::permutation, std::move(images), label);
  }

  WhiteheadMove WhiteheadMove::type_two(letter_type   multiplier,
                                        std::uint64_t subset,
                                        unsigned      rank) {
    if (multiplier == 0 || generator_of(multiplier) > rank) {
      throw ArgumentError("type II move: multiplier outside rank");
    }
    if (subset & (letter_bit(multiplier) | letter_bit(-multiplier))) {
      throw ArgumentError("type II move: S must avoid the multiplier");
    }
    if (rank < 32 && (subset >> (2 * rank)) != 0) {
      throw ArgumentError("type II move: S mentions letters outside rank");
    }
    std::vector<Word> images;
    std::string       label = "II:";
    label.push_back(letter_char(multiplier));
    label += ":{";
    for (unsigned g = 1; g <= rank; ++g) {
      letter_type x = static_cast<letter_type>(g);
      if (generator_of(multiplier) == g) {
        images.push_back(Word::generator(g, rank));
        continue;
      }
      std::vector<letter_type> img;
      if (subset & letter_bit(-x)) {
        img.push_back(-multiplier);
        label.push_back(letter_char(-x));
      }
      img.push_back(x);
      if (subset & letter_bit(x)) {
        img.push_back(multiplier);
        label.push_back(letter_char(x));
      }
      images.emplace_back(std::move(img), rank);
    }
    label.push_back('}');
    return WhiteheadMove(Kind::multiplier, std::move(images), label);
  }

  Word WhiteheadMove::apply(Word const& w) const {
    if (w.rank() > rank()) {
      throw ArgumentError("Whitehead move of rank " + std::to_string(rank())
                          + " applied to a word of rank "
                          + std::to_string(w.rank()));
    }
    return substitute(w.with_rank(rank()), _images);
  }

  std::string WhiteheadMove::to_string() const {
    return _label;
  }

  std::vector<WhiteheadMove> enumerate_multiplier_moves(unsigned rank) {
    std::vector<WhiteheadMove> moves;
    for (unsigned g = 1; g <= rank; ++g) {
      for (int sign : {1, -1}) {
        letter_type a = sign * static_cast<letter_type>(g);
        // Subsets of the 2(r-1) other signed letters.
        std::vector<std::uint64_t> bits;
        for (unsigned h = 1; h <= rank; ++h) {
          if (h != g) {
            bits.push_back(letter_bit(static_cast<letter_type>(h)));
            bits.push_back(letter_bit(-static_cast<letter_type>(h)));
          }
        }
        std::uint64_t count = std::uint64_t{1} << bits.size();
        for (std::uint64_t m = 1; m < count; ++m) {
          std::uint64_t subset = 0;
          for (std::size_t b = 0; b < bits.size(); ++b) {
            if (m & (std::uint64_t{1} << b)) {
              subset |= bits[b];
            }
          }
          moves.push_back(WhiteheadMove::type_two(a, subset, rank));
        }
      }
    }
    return moves;
  }

  std::vector<WhiteheadMove> enumerate_whitehead_moves(unsigned rank) {
    if (rank == 0 || rank > max_rank) {
      throw ArgumentError("enumerate_whitehead_moves: bad rank");
    }
    std::vector<WhiteheadMove> moves;
    std::vector<unsigned>      perm(rank);
    std::iota(perm.begin(), perm.end(), 0u);
    do {
      for (unsigned m = 0; m < (1u << rank); ++m) {
        std::vector<int> signs(rank);
        for (unsigned i = 0; i < rank; ++i) {
          signs[i] = (m >> i) & 1u ? -1 : 1;
        }
        moves.push_back(WhiteheadMove::type_one(perm, signs));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto multipliers = enumerate_multiplier_moves(rank);
    moves.insert(moves.end(), multipliers.begin(), multipliers.end());
    return moves;
  }

  bool is_automorphism(WhiteheadMove const& move) {
    auto g = CoreGraph::from_generators(move.images(), move.rank());
    return g.num_vertices() == 1 && g.num_edges() == move.rank();
  }

}  // namespace wordmaps
