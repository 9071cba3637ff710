#ifndef WORDMAPS_CORE_GRAPH_HPP_
#define WORDMAPS_CORE_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordmaps/word.hpp"

namespace wordmaps {

  // A directed edge of a labelled graph; label is a generator index >= 1.
  struct Edge {
    unsigned source;
    unsigned label;
    unsigned target;

    friend bool operator==(Edge const&, Edge const&) = default;
  };

  // A based, labelled digraph which need not be folded.  Only exists on the
  // way into fold().
  struct PreGraph {
    unsigned          ambient_rank = 1;
    unsigned          num_vertices = 1;
    unsigned          base         = 0;
    std::vector<Edge> edges;

    // Wedge of loops at vertex 0, one spelling each word.
    static PreGraph wedge(std::span<Word const> words, unsigned ambient_rank);
  };

  // The folded Stallings core graph of a finitely generated subgroup of F_r.
  //
  // Invariants (established by fold and never broken afterwards):
  //   * folded: at most one outgoing and one incoming edge per label at each
  //     vertex;
  //   * connected, and every vertex other than the base has degree >= 2;
  //   * vertices are numbered canonically by a breadth-first search from the
  //     base (vertex 0) that explores, for labels 1..r in turn, the outgoing
  //     and then the incoming edge.
  //
  // Two core graphs are equal iff they are isomorphic as based labelled
  // graphs iff they represent the same subgroup.
  class CoreGraph {
   public:
    static constexpr int none = -1;

    // The trivial subgroup of F_r: one vertex, no edges.
    static CoreGraph trivial(unsigned ambient_rank);

    // F_r itself: the rose with r loops.
    static CoreGraph rose(unsigned ambient_rank);

    // Core graph of <gens>.  Words must have rank <= ambient_rank.
    static CoreGraph from_generators(std::span<Word const> gens,
                                     unsigned              ambient_rank);

    static CoreGraph from_generators(std::initializer_list<Word> gens,
                                     unsigned                    ambient_rank) {
      return from_generators(std::span<Word const>(gens.begin(), gens.size()),
                             ambient_rank);
    }

    unsigned ambient_rank() const noexcept {
      return _ambient_rank;
    }

    unsigned num_vertices() const noexcept {
      return _num_vertices;
    }

    std::size_t num_edges() const noexcept {
      return _num_edges;
    }

    // Rank of the subgroup: |E| - |V| + 1.
    unsigned rank() const noexcept {
      return static_cast<unsigned>(_num_edges + 1 - _num_vertices);
    }

    // Endpoint of the edge at v labelled by the signed letter l: the target
    // of the outgoing edge for l > 0, the source of the incoming one for
    // l < 0.  Returns `none` if there is no such edge.
    int follow(unsigned v, letter_type l) const noexcept {
      std::size_t i = static_cast<std::size_t>(v) * _ambient_rank
                      + generator_of(l) - 1;
      return l > 0 ? _out[i] : _in[i];
    }

    // Edges in canonical order (source, then label).
    std::vector<Edge> edges() const;

    // Sorted generator indices that label at least one edge.
    std::vector<unsigned> labels() const;

    std::string const& canonical_key() const noexcept {
      return _key;
    }

    // Throws ArgumentError if w.rank() exceeds the ambient rank.
    bool contains(Word const& w) const;

    // Free basis read off the canonical BFS spanning tree: one word per
    // non-tree edge, in canonical edge order.
    std::vector<Word> basis() const;

    // For each outgoing edge slot v * ambient_rank + (label - 1): the 1-based
    // position of the corresponding element in basis(), or 0 for tree edges
    // and absent edges.
    std::vector<unsigned> basis_slots() const;

    // Label of the path from the base to v along the spanning tree.
    Word tree_path(unsigned v) const;

    // Number of edges after also pruning the base, i.e. the size of the core
    // of the conjugacy class of the subgroup.
    std::size_t cyclic_core_size() const;

    // Vertices surviving when hanging trees are pruned including the base.
    std::vector<bool> cyclic_core_vertices() const;

    std::string to_dot(std::string const& name = "core") const;

    friend bool operator==(CoreGraph const& a, CoreGraph const& b) {
      return a._key == b._key;
    }

    friend bool operator<(CoreGraph const& a, CoreGraph const& b) {
      return a._key < b._key;
    }

   private:
    friend CoreGraph fold(PreGraph const&, std::optional<std::uint64_t>);

    CoreGraph() = default;

    // Builds from an already folded graph: prunes, renumbers, keys.
    static CoreGraph from_folded(unsigned                ambient_rank,
                                 unsigned                num_vertices,
                                 unsigned                base,
                                 std::vector<int> const& out);

    unsigned              _ambient_rank = 1;
    unsigned              _num_vertices = 1;
    std::size_t           _num_edges    = 0;
    std::vector<int>      _out;
    std::vector<int>      _in;
    std::vector<unsigned> _parent;        // BFS tree parent, base -> itself
    std::vector<letter_type> _parent_letter;  // letter from parent to v
    std::string           _key;
  };

  // Stallings folding followed by pruning of hanging trees away from the
  // base.  Components not connected to the base are discarded.  When
  // `order_seed` is given, edges and pending identifications are processed in
  // a pseudo-random order determined by the seed; the result is the same.
  CoreGraph fold(PreGraph const&               graph,
                 std::optional<std::uint64_t> order_seed = std::nullopt);

  // Base-preserving label-preserving morphism H -> J, as a vertex map, if
  // one exists.  Throws ArgumentError if the ambient ranks differ.
  std::optional<std::vector<unsigned>> morphism(CoreGraph const& H,
                                                CoreGraph const& J);

  inline bool subgroup_leq(CoreGraph const& H, CoreGraph const& J) {
    return morphism(H, J).has_value();
  }

  // The core of the conjugacy class of H, rebased at the vertex giving the
  // smallest canonical key.  Equal for H and any conjugate gHg^-1.
  CoreGraph conjugacy_normal_form(CoreGraph const& H);

  struct QuotientOptions {
    unsigned max_vertices = 12;
    unsigned workers      = 1;
  };

  // All distinct folded quotients of H by identifications of vertices,
  // sorted by canonical key.  Contains H.  Throws BudgetExceeded when H has
  // more than options.max_vertices vertices.
  std::vector<CoreGraph> quotients(CoreGraph const&       H,
                                   QuotientOptions const& options = {});

}  // namespace wordmaps

#endif  // WORDMAPS_CORE_GRAPH_HPP_
