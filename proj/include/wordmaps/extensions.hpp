#ifndef WORDMAPS_EXTENSIONS_HPP_
#define WORDMAPS_EXTENSIONS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordmaps/core_graph.hpp"
#include "wordmaps/word.hpp"

namespace wordmaps {

  struct ExtensionOptions {
    unsigned    max_vertices   = 12;      // quotient enumeration cap
    unsigned    max_rank       = 4;       // rank cap for free-factor tests
    std::size_t search_budget  = 200000;  // Whitehead search states
    unsigned    workers        = 1;
  };

  // Rewrites w, an element of J, as a word in the spanning-tree basis of J
  // (generator i is the i-th element of J.basis()).  The result has rank
  // max(1, J.rank()).  Throws ArgumentError if w is not in J.
  Word rewrite_in_basis(CoreGraph const& J, Word const& w);

  // H written over the basis of J, as a subgroup of F_rank(J).
  CoreGraph relative_subgroup(CoreGraph const& H, CoreGraph const& J);

  // Is M a free factor of F_k, where k = M.ambient_rank()?  Exhaustive search
  // over Whitehead moves that never increase the size of the conjugacy core.
  bool is_free_factor_of_ambient(CoreGraph const&        M,
                                 ExtensionOptions const& options = {});

  // Is M a free factor of J?  Requires M <= J (ArgumentError otherwise) and
  // rank(J) <= options.max_rank (BudgetExceeded otherwise).
  bool is_free_factor(CoreGraph const&        M,
                      CoreGraph const&        J,
                      ExtensionOptions const& options = {});

  // The X-quotients of a subgroup H together with the inclusion order, the
  // free-factor relation between comparable nodes, and which nodes are
  // algebraic extensions of H.
  struct ExtensionPoset {
    CoreGraph                      base;
    std::vector<CoreGraph>         nodes;       // sorted by canonical key
    std::size_t                    base_index;  // nodes[base_index] == base
    std::size_t                    top_index;   // rose on the labels of base
    std::vector<std::vector<bool>> leq;         // leq[i][j]: nodes[i] <= nodes[j]
    std::vector<std::vector<bool>> free_factor; // meaningful where leq holds
    std::vector<bool>              algebraic;

    std::vector<std::size_t> algebraic_indices() const;

    // Indices of proper algebraic extensions, in node order.
    std::vector<std::size_t> proper_algebraic_indices() const;

    std::optional<std::size_t> index_of(CoreGraph const& g) const;
  };

  // Builds the poset.  Node J is marked algebraic iff no node A != J with
  // A <= J is a free factor of J.
  ExtensionPoset algebraic_extensions(CoreGraph const&        H,
                                      ExtensionOptions const& options = {});

  // π or π_ι together with the number C of extensions attaining it.
  // value == nullopt encodes infinity (and then count == 0).
  struct RankInvariant {
    std::optional<unsigned> value;
    unsigned                count = 0;

    std::string to_string() const {
      return value ? std::to_string(*value) : std::string("inf");
    }
  };

  // Smallest rank of a proper algebraic extension of H and how many there
  // are of that rank.
  RankInvariant pi(CoreGraph const& H, ExtensionOptions const& options = {});

  RankInvariant pi_of_word(Word const& w, ExtensionOptions const& options = {});

  // Throws HypothesisError("images-free") if the images do not freely
  // generate a subgroup of rank images.size().
  void validate_free_images(std::span<Word const> images);

  // Smallest rank of an algebraic extension of ι(H) not contained in ι(J),
  // where J = F_k and ι sends x_i to images[i-1].  H lives in F_k
  // (H.ambient_rank() == images.size()) and must be algebraic in F_k.
  // Throws HypothesisError("images-free") or ("H-algebraic-in-J").
  RankInvariant pi_iota(CoreGraph const&        H,
                        std::span<Word const>   images,
                        ExtensionOptions const& options = {});

  // The unique A with H <=alg A <=ff J.  Requires H <= J.
  CoreGraph ff_closure(CoreGraph const&        H,
                       CoreGraph const&        J,
                       ExtensionOptions const& options = {});

  // Poset as JSON: nodes (key as hex, rank, basis, algebraic flag) and
  // inclusion edges with their free-factor flag.
  std::string poset_to_json(ExtensionPoset const& poset);

  // Hasse diagram of the algebraic extensions, as DOT.
  std::string poset_to_dot(ExtensionPoset const& poset);

  std::string key_to_hex(std::string const& key);

}  // namespace wordmaps

#endif  // WORDMAPS_EXTENSIONS_HPP_
