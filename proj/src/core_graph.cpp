#include "wordmaps/core_graph.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <sstream>
#include <thread>

#include "wordmaps/error.hpp"
#include "wordmaps/rng.hpp"

namespace wordmaps {

  ////////////////////////////////////////////////////////////////////////
  // PreGraph
  ////////////////////////////////////////////////////////////////////////

  PreGraph PreGraph::wedge(std::span<Word const> words, unsigned ambient_rank) {
    PreGraph g;
    g.ambient_rank = ambient_rank;
    g.num_vertices = 1;
    g.base         = 0;
    for (auto const& w : words) {
      if (w.max_generator() > ambient_rank) {
        throw ArgumentError("generator " + w.to_string()
                            + " does not fit the ambient rank");
      }
      auto     letters = w.letters();
      unsigned current = 0;
      for (std::size_t i = 0; i < letters.size(); ++i) {
        unsigned next = (i + 1 == letters.size()) ? 0 : g.num_vertices++;
        letter_type l = letters[i];
        if (l > 0) {
          g.edges.push_back({current, generator_of(l), next});
        } else {
          g.edges.push_back({next, generator_of(l), current});
        }
        current = next;
      }
    }
    return g;
  }

  ////////////////////////////////////////////////////////////////////////
  // Folding
  ////////////////////////////////////////////////////////////////////////

  namespace {

    class Folder {
     public:
      Folder(unsigned num_vertices, unsigned rank, Rng* rng)
          : _rank(rank),
            _parent(num_vertices),
            _size(num_vertices, 1),
            _out(static_cast<std::size_t>(num_vertices) * rank, -1),
            _in(static_cast<std::size_t>(num_vertices) * rank, -1),
            _rng(rng) {
        std::iota(_parent.begin(), _parent.end(), 0u);
      }

      unsigned find(unsigned v) {
        while (_parent[v] != v) {
          _parent[v] = _parent[_parent[v]];
          v          = _parent[v];
        }
        return v;
      }

      void add_edge(Edge const& e) {
        _pending.emplace_back(e.source, e.target, e.label);
        drain();
      }

      // out table indexed by representative, -1 where absent.
      int out(unsigned v, unsigned label) {
        int t = _out[idx(v, label)];
        return t < 0 ? -1 : static_cast<int>(find(static_cast<unsigned>(t)));
      }

     private:
      // A pending item is either an edge (label > 0) or an identification
      // (label == 0).
      struct Item {
        unsigned a, b, label;
        Item(unsigned a_, unsigned b_, unsigned l) : a(a_), b(b_), label(l) {}
      };

      std::size_t idx(unsigned v, unsigned label) const {
        return static_cast<std::size_t>(v) * _rank + label - 1;
      }

      void drain() {
        while (!_pending.empty()) {
          std::size_t pick = _pending.size() - 1;
          if (_rng != nullptr) {
            pick = static_cast<std::size_t>(_rng->below(_pending.size()));
          }
          Item it = _pending[pick];
          _pending[pick] = _pending.back();
          _pending.pop_back();
          if (it.label == 0) {
            merge(it.a, it.b);
          } else {
            insert(it.a, it.label, it.b);
          }
        }
      }

      void insert(unsigned u, unsigned label, unsigned v) {
        u       = find(u);
        v       = find(v);
        int& fw = _out[idx(u, label)];
        int& bw = _in[idx(v, label)];
        if (fw >= 0) {
          _pending.emplace_back(find(static_cast<unsigned>(fw)), v, 0);
          return;
        }
        if (bw >= 0) {
          _pending.emplace_back(find(static_cast<unsigned>(bw)), u, 0);
          return;
        }
        fw = static_cast<int>(v);
        bw = static_cast<int>(u);
      }

      void merge(unsigned a, unsigned b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return;
        }
        if (_size[a] < _size[b]) {
          std::swap(a, b);
        }
        _parent[b] = a;
        _size[a] += _size[b];
        for (unsigned l = 1; l <= _rank; ++l) {
          for (auto* table : {&_out, &_in}) {
            int& ta = (*table)[idx(a, l)];
            int  tb = (*table)[idx(b, l)];
            if (tb < 0) {
              continue;
            }
            if (ta < 0) {
              ta = tb;
            } else {
              _pending.emplace_back(static_cast<unsigned>(ta),
                                    static_cast<unsigned>(tb),
                                    0);
            }
          }
        }
      }

      unsigned              _rank;
      std::vector<unsigned> _parent;
      std::vector<unsigned> _size;
      std::vector<int>      _out;
      std::vector<int>      _in;
      std::vector<Item>     _pending;
      Rng*                  _rng;
    };

    void put_u32(std::string& s, std::uint32_t x) {
      for (int i = 0; i < 4; ++i) {
        s.push_back(static_cast<char>((x >> (8 * i)) & 0xFFu));
      }
    }

  }  // namespace

  CoreGraph fold(PreGraph const& graph, std::optional<std::uint64_t> order_seed) {
    if (graph.ambient_rank == 0 || graph.ambient_rank > max_rank) {
      throw ArgumentError("fold: bad ambient rank");
    }
    if (graph.base >= graph.num_vertices) {
      throw ArgumentError("fold: base vertex out of range");
    }
    std::vector<Edge> edges = graph.edges;
    for (auto const& e : edges) {
      if (e.source >= graph.num_vertices || e.target >= graph.num_vertices
          || e.label == 0 || e.label > graph.ambient_rank) {
        throw ArgumentError("fold: malformed edge");
      }
    }
    std::optional<Rng> rng;
    if (order_seed) {
      rng.emplace(*order_seed);
      rng->shuffle(std::span<Edge>(edges));
    }
    Folder f(graph.num_vertices, graph.ambient_rank, rng ? &*rng : nullptr);
    for (auto const& e : edges) {
      f.add_edge(e);
    }
    // Compact representatives.
    std::vector<int> rep_index(graph.num_vertices, -1);
    unsigned         count = 0;
    for (unsigned v = 0; v < graph.num_vertices; ++v) {
      unsigned r = f.find(v);
      if (rep_index[r] < 0) {
        rep_index[r] = static_cast<int>(count++);
      }
    }
    std::vector<int> out(static_cast<std::size_t>(count) * graph.ambient_rank,
                         -1);
    for (unsigned v = 0; v < graph.num_vertices; ++v) {
      if (f.find(v) != v) {
        continue;
      }
      for (unsigned l = 1; l <= graph.ambient_rank; ++l) {
        int t = f.out(v, l);
        if (t >= 0) {
          out[static_cast<std::size_t>(rep_index[v]) * graph.ambient_rank + l
              - 1]
              = rep_index[static_cast<unsigned>(t)];
        }
      }
    }
    return CoreGraph::from_folded(
        graph.ambient_rank,
        count,
        static_cast<unsigned>(rep_index[f.find(graph.base)]),
        out);
  }

  ////////////////////////////////////////////////////////////////////////
  // CoreGraph
  ////////////////////////////////////////////////////////////////////////

  CoreGraph CoreGraph::from_folded(unsigned                ambient_rank,
                                   unsigned                num_vertices,
                                   unsigned                base,
                                   std::vector<int> const& out) {
    unsigned const r = ambient_rank;
    auto           at = [r](unsigned v, unsigned l) {
      return static_cast<std::size_t>(v) * r + l - 1;
    };
    std::vector<int> in(out.size(), -1);
    std::vector<unsigned> degree(num_vertices, 0);
    for (unsigned v = 0; v < num_vertices; ++v) {
      for (unsigned l = 1; l <= r; ++l) {
        int t = out[at(v, l)];
        if (t >= 0) {
          in[at(static_cast<unsigned>(t), l)] = static_cast<int>(v);
          ++degree[v];
          ++degree[static_cast<unsigned>(t)];
        }
      }
    }
    // Prune hanging trees.
    std::vector<bool>     alive(num_vertices, true);
    std::vector<unsigned> stack;
    for (unsigned v = 0; v < num_vertices; ++v) {
      if (v != base && degree[v] <= 1) {
        stack.push_back(v);
      }
    }
    while (!stack.empty()) {
      unsigned v = stack.back();
      stack.pop_back();
      if (!alive[v]) {
        continue;
      }
      alive[v] = false;
      for (unsigned l = 1; l <= r; ++l) {
        for (int t : {out[at(v, l)], in[at(v, l)]}) {
          if (t >= 0 && alive[static_cast<unsigned>(t)]) {
            unsigned u = static_cast<unsigned>(t);
            if (--degree[u] <= 1 && u != base) {
              stack.push_back(u);
            }
          }
        }
      }
    }
    // Canonical BFS numbering from the base over live vertices.
    std::vector<int>         number(num_vertices, -1);
    std::vector<unsigned>    order;
    std::vector<unsigned>    parent;
    std::vector<letter_type> parent_letter;
    number[base] = 0;
    order.push_back(base);
    parent.push_back(0);
    parent_letter.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
      unsigned v = order[head];
      for (unsigned l = 1; l <= r; ++l) {
        for (int sign : {1, -1}) {
          int t = sign > 0 ? out[at(v, l)] : in[at(v, l)];
          if (t < 0 || !alive[static_cast<unsigned>(t)]) {
            continue;
          }
          unsigned u = static_cast<unsigned>(t);
          if (number[u] < 0) {
            number[u] = static_cast<int>(order.size());
            order.push_back(u);
            parent.push_back(static_cast<unsigned>(head));
            parent_letter.push_back(sign * static_cast<letter_type>(l));
          }
        }
      }
    }
    CoreGraph g;
    g._ambient_rank  = r;
    g._num_vertices  = static_cast<unsigned>(order.size());
    g._out.assign(static_cast<std::size_t>(g._num_vertices) * r, none);
    g._in.assign(static_cast<std::size_t>(g._num_vertices) * r, none);
    g._parent        = std::move(parent);
    g._parent_letter = std::move(parent_letter);
    g._num_edges     = 0;
    for (unsigned i = 0; i < g._num_vertices; ++i) {
      unsigned v = order[i];
      for (unsigned l = 1; l <= r; ++l) {
        int t = out[at(v, l)];
        if (t >= 0 && alive[static_cast<unsigned>(t)]) {
          int j                = number[static_cast<unsigned>(t)];
          g._out[at(i, l)]     = j;
          g._in[at(static_cast<unsigned>(j), l)] = static_cast<int>(i);
          ++g._num_edges;
        }
      }
    }
    g._key.reserve(8 + 4 * g._out.size());
    put_u32(g._key, r);
    put_u32(g._key, g._num_vertices);
    for (int t : g._out) {
      put_u32(g._key, static_cast<std::uint32_t>(t + 1));
    }
    return g;
  }

  CoreGraph CoreGraph::trivial(unsigned ambient_rank) {
    PreGraph p;
    p.ambient_rank = ambient_rank;
    return fold(p);
  }

  CoreGraph CoreGraph::rose(unsigned ambient_rank) {
    PreGraph p;
    p.ambient_rank = ambient_rank;
    for (unsigned l = 1; l <= ambient_rank; ++l) {
      p.edges.push_back({0, l, 0});
    }
    return fold(p);
  }

  CoreGraph CoreGraph::from_generators(std::span<Word const> gens,
                                       unsigned              ambient_rank) {
    for (auto const& w : gens) {
      if (w.max_generator() > ambient_rank) {
        throw ArgumentError("from_generators: generator " + w.to_string()
                            + " exceeds ambient rank "
                            + std::to_string(ambient_rank));
      }
    }
    return fold(PreGraph::wedge(gens, ambient_rank));
  }

  std::vector<Edge> CoreGraph::edges() const {
    std::vector<Edge> result;
    result.reserve(_num_edges);
    for (unsigned v = 0; v < _num_vertices; ++v) {
      for (unsigned l = 1; l <= _ambient_rank; ++l) {
        int t = follow(v, static_cast<letter_type>(l));
        if (t != none) {
          result.push_back({v, l, static_cast<unsigned>(t)});
        }
      }
    }
    return result;
  }

  std::vector<unsigned> CoreGraph::labels() const {
    std::vector<unsigned> result;
    for (unsigned l = 1; l <= _ambient_rank; ++l) {
      for (unsigned v = 0; v < _num_vertices; ++v) {
        if (follow(v, static_cast<letter_type>(l)) != none) {
          result.push_back(l);
          break;
        }
      }
    }
    return result;
  }

  bool CoreGraph::contains(Word const& w) const {
    if (w.max_generator() > _ambient_rank) {
      throw ArgumentError("contains: word " + w.to_string()
                          + " exceeds the ambient rank");
    }
    int v = 0;
    for (auto l : w.letters()) {
      v = follow(static_cast<unsigned>(v), l);
      if (v == none) {
        return false;
      }
    }
    return v == 0;
  }

  Word CoreGraph::tree_path(unsigned v) const {
    std::vector<letter_type> rev;
    while (v != 0) {
      rev.push_back(_parent_letter[v]);
      v = _parent[v];
    }
    return Word(std::vector<letter_type>(rev.rbegin(), rev.rend()),
                _ambient_rank);
  }

  std::vector<unsigned> CoreGraph::basis_slots() const {
    std::vector<unsigned> slots(_out.size(), 0);
    unsigned              next = 0;
    for (auto const& e : edges()) {
      letter_type l = static_cast<letter_type>(e.label);
      bool is_tree  = (e.target != 0 && _parent[e.target] == e.source
                      && _parent_letter[e.target] == l)
                     || (e.source != 0 && _parent[e.source] == e.target
                         && _parent_letter[e.source] == -l);
      if (!is_tree) {
        slots[static_cast<std::size_t>(e.source) * _ambient_rank + e.label - 1]
            = ++next;
      }
    }
    return slots;
  }

  std::vector<Word> CoreGraph::basis() const {
    std::vector<Word> paths;
    paths.reserve(_num_vertices);
    for (unsigned v = 0; v < _num_vertices; ++v) {
      paths.push_back(tree_path(v));
    }
    auto              slots = basis_slots();
    std::vector<Word> result;
    for (auto const& e : edges()) {
      if (slots[static_cast<std::size_t>(e.source) * _ambient_rank + e.label - 1]
          == 0) {
        continue;
      }
      result.push_back(
          paths[e.source]
          * Word(std::vector<letter_type>{static_cast<letter_type>(e.label)},
                 _ambient_rank)
          * invert(paths[e.target]));
    }
    return result;
  }

  std::size_t CoreGraph::cyclic_core_size() const {
    std::size_t edges_left = 0;
    auto        alive      = cyclic_core_vertices();
    for (auto const& e : edges()) {
      if (alive[e.source] && alive[e.target]) {
        ++edges_left;
      }
    }
    return edges_left;
  }

  std::vector<bool> CoreGraph::cyclic_core_vertices() const {
    std::vector<unsigned> degree(_num_vertices, 0);
    for (auto const& e : edges()) {
      ++degree[e.source];
      ++degree[e.target];
    }
    std::vector<bool>     alive(_num_vertices, true);
    std::vector<unsigned> stack;
    for (unsigned v = 0; v < _num_vertices; ++v) {
      if (degree[v] <= 1) {
        stack.push_back(v);
      }
    }
    while (!stack.empty()) {
      unsigned v = stack.back();
      stack.pop_back();
      if (!alive[v]) {
        continue;
      }
      alive[v] = false;
      for (unsigned l = 1; l <= _ambient_rank; ++l) {
        for (letter_type s : {1, -1}) {
          int t = follow(v, s * static_cast<letter_type>(l));
          if (t != none && alive[static_cast<unsigned>(t)]) {
            if (--degree[static_cast<unsigned>(t)] <= 1) {
              stack.push_back(static_cast<unsigned>(t));
            }
          }
        }
      }
    }
    return alive;
  }

  CoreGraph conjugacy_normal_form(CoreGraph const& H) {
    auto alive = H.cyclic_core_vertices();
    std::vector<int> index(H.num_vertices(), -1);
    unsigned         n = 0;
    for (unsigned v = 0; v < H.num_vertices(); ++v) {
      if (alive[v]) {
        index[v] = static_cast<int>(n++);
      }
    }
    if (n == 0) {
      return CoreGraph::trivial(H.ambient_rank());
    }
    PreGraph p;
    p.ambient_rank = H.ambient_rank();
    p.num_vertices = n;
    for (auto const& e : H.edges()) {
      if (alive[e.source] && alive[e.target]) {
        p.edges.push_back({static_cast<unsigned>(index[e.source]),
                           e.label,
                           static_cast<unsigned>(index[e.target])});
      }
    }
    std::optional<CoreGraph> best;
    for (unsigned b = 0; b < n; ++b) {
      p.base = b;
      auto g = fold(p);
      if (!best || g < *best) {
        best = std::move(g);
      }
    }
    return *best;
  }

  std::string CoreGraph::to_dot(std::string const& name) const {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    os << "  v0 [shape=doublecircle];\n";
    for (unsigned v = 1; v < _num_vertices; ++v) {
      os << "  v" << v << " [shape=circle];\n";
    }
    for (auto const& e : edges()) {
      os << "  v" << e.source << " -> v" << e.target << " [label=\""
         << letter_char(static_cast<letter_type>(e.label)) << "\"];\n";
    }
    os << "}\n";
    return os.str();
  }

  std::optional<std::vector<unsigned>> morphism(CoreGraph const& H,
                                                CoreGraph const& J) {
    if (H.ambient_rank() != J.ambient_rank()) {
      throw ArgumentError("morphism: ambient ranks differ");
    }
    std::vector<int>      image(H.num_vertices(), -1);
    std::vector<unsigned> queue{0};
    image[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      unsigned v = queue[head];
      for (unsigned l = 1; l <= H.ambient_rank(); ++l) {
        for (letter_type s : {1, -1}) {
          letter_type letter = s * static_cast<letter_type>(l);
          int         t      = H.follow(v, letter);
          if (t == CoreGraph::none) {
            continue;
          }
          int jt = J.follow(static_cast<unsigned>(image[v]), letter);
          if (jt == CoreGraph::none) {
            return std::nullopt;
          }
          if (image[static_cast<unsigned>(t)] < 0) {
            image[static_cast<unsigned>(t)] = jt;
            queue.push_back(static_cast<unsigned>(t));
          } else if (image[static_cast<unsigned>(t)] != jt) {
            return std::nullopt;
          }
        }
      }
    }
    return std::vector<unsigned>(image.begin(), image.end());
  }

  ////////////////////////////////////////////////////////////////////////
  // Quotients
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // A constraint (u, w, tu, tw): if u and w share a block then so must tu
    // and tw.  Checked once all four vertices have been assigned.
    struct Constraint {
      unsigned u, w, tu, tw;
    };

    class PartitionSearch {
     public:
      explicit PartitionSearch(CoreGraph const& H)
          : _graph(H), _edges(H.edges()), _n(H.num_vertices()), _checks(_n) {
        for (unsigned u = 0; u < _n; ++u) {
          for (unsigned w = u + 1; w < _n; ++w) {
            for (unsigned l = 1; l <= H.ambient_rank(); ++l) {
              for (letter_type s : {1, -1}) {
                letter_type letter = s * static_cast<letter_type>(l);
                int         tu     = H.follow(u, letter);
                int         tw     = H.follow(w, letter);
                if (tu == CoreGraph::none || tw == CoreGraph::none) {
                  continue;
                }
                Constraint c{u,
                             w,
                             static_cast<unsigned>(tu),
                             static_cast<unsigned>(tw)};
                unsigned   last = std::max({c.u, c.w, c.tu, c.tw});
                _checks[last].push_back(c);
              }
            }
          }
        }
      }

      // Every consistent assignment of the first `depth` vertices.
      std::vector<std::vector<unsigned>> prefixes(unsigned depth) const {
        std::vector<std::vector<unsigned>> result;
        std::vector<unsigned>              block(_n, 0);
        collect(block, 0, 0, std::min(depth, _n), result);
        return result;
      }

      template <typename Visit>
      void run_from(std::vector<unsigned> const& prefix, Visit&& visit) const {
        std::vector<unsigned> block(_n, 0);
        unsigned              used = 0;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
          block[i] = prefix[i];
          used     = std::max(used, prefix[i] + 1);
        }
        recurse(block, static_cast<unsigned>(prefix.size()), used, visit);
      }

      CoreGraph quotient(std::vector<unsigned> const& block,
                         unsigned                     blocks) const {
        PreGraph p;
        p.ambient_rank = _graph.ambient_rank();
        p.num_vertices = blocks;
        p.base         = block[0];
        for (auto const& e : _edges) {
          p.edges.push_back({block[e.source], e.label, block[e.target]});
        }
        return fold(p);
      }

     private:
      bool consistent(std::vector<unsigned> const& block, unsigned k) const {
        for (auto const& c : _checks[k]) {
          if (block[c.u] == block[c.w] && block[c.tu] != block[c.tw]) {
            return false;
          }
        }
        return true;
      }

      void collect(std::vector<unsigned>&              block,
                   unsigned                            k,
                   unsigned                            used,
                   unsigned                            depth,
                   std::vector<std::vector<unsigned>>& out) const {
        if (k == depth) {
          out.emplace_back(block.begin(), block.begin() + depth);
          return;
        }
        for (unsigned b = 0; b <= used; ++b) {
          block[k] = b;
          if (consistent(block, k)) {
            collect(block, k + 1, std::max(used, b + 1), depth, out);
          }
        }
      }

      template <typename Visit>
      void recurse(std::vector<unsigned>& block,
                   unsigned               k,
                   unsigned               used,
                   Visit&                 visit) const {
        if (k == _n) {
          visit(block, used);
          return;
        }
        for (unsigned b = 0; b <= used; ++b) {
          block[k] = b;
          if (consistent(block, k)) {
            recurse(block, k + 1, std::max(used, b + 1), visit);
          }
        }
      }

      CoreGraph const&                     _graph;
      std::vector<Edge>                    _edges;
      unsigned                             _n;
      std::vector<std::vector<Constraint>> _checks;
    };

  }  // namespace

  std::vector<CoreGraph> quotients(CoreGraph const&       H,
                                   QuotientOptions const& options) {
    if (H.num_vertices() > options.max_vertices) {
      throw BudgetExceeded("quotients: core graph has "
                           + std::to_string(H.num_vertices())
                           + " vertices, above the cap of "
                           + std::to_string(options.max_vertices));
    }
    PartitionSearch search(H);
    // Only partitions that are already congruences are visited: any other
    // partition folds onto the congruence it generates, which is visited
    // itself.
    auto     prefixes = search.prefixes(4);
    unsigned workers  = std::max(1u, options.workers);
    std::vector<std::map<std::string, CoreGraph>> found(workers);
    auto work = [&](unsigned id) {
      for (std::size_t i = id; i < prefixes.size(); i += workers) {
        search.run_from(prefixes[i],
                        [&](std::vector<unsigned> const& block, unsigned used) {
                          auto q = search.quotient(block, used);
                          found[id].try_emplace(q.canonical_key(), q);
                        });
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (unsigned id = 0; id < workers; ++id) {
        threads.emplace_back(work, id);
      }
      for (auto& t : threads) {
        t.join();
      }
    }
    std::map<std::string, CoreGraph> merged;
    for (auto& m : found) {
      merged.merge(m);
    }
    std::vector<CoreGraph> result;
    result.reserve(merged.size());
    for (auto& [key, g] : merged) {
      result.push_back(std::move(g));
    }
    return result;
  }

}  // namespace wordmaps
