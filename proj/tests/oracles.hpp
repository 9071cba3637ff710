// Brute-force reference implementations used only by the tests.  They are
// deliberately slow and share no code paths with the library beyond the
// plain value types.
#ifndef WORDMAPS_TESTS_ORACLES_HPP_
#define WORDMAPS_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wordmaps/core_graph.hpp"
#include "wordmaps/permutation.hpp"
#include "wordmaps/rational.hpp"
#include "wordmaps/whitehead.hpp"
#include "wordmaps/word.hpp"

namespace oracle {

  using wordmaps::Permutation;
  using wordmaps::Rational;
  using wordmaps::Word;

  // Repeatedly deletes the first adjacent cancelling pair.
  inline std::vector<int> naive_reduce(std::vector<int> w) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] == -w[i + 1]) {
          w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
          changed = true;
          break;
        }
      }
    }
    return w;
  }

  inline std::vector<int> random_letters(std::mt19937_64& rng, unsigned rank, unsigned max_len) {
    std::uniform_int_distribution<unsigned> len(0, max_len);
    std::uniform_int_distribution<int>      gen(1, static_cast<int>(rank));
    std::bernoulli_distribution             neg(0.5);
    std::vector<int>                        w(len(rng));
    for (auto& l : w) {
      l = gen(rng) * (neg(rng) ? -1 : 1);
    }
    return w;
  }

  inline Word random_word(std::mt19937_64& rng, unsigned rank, unsigned max_len) {
    return Word(random_letters(rng, rank, max_len), rank);
  }

  // Words written with x, y, z for the first three generators.
  inline Word xyz(std::string text, unsigned rank = 2) {
    for (auto& c : text) {
      if (c >= 'x' && c <= 'z') {
        c = static_cast<char>('a' + (c - 'x'));
      } else if (c >= 'X' && c <= 'Z') {
        c = static_cast<char>('A' + (c - 'X'));
      }
    }
    return wordmaps::parse_word(text, rank);
  }

  // Text in the word grammar spelling the letters one by one.
  inline std::string spell(std::vector<int> const& w) {
    std::string s;
    for (auto l : w) {
      char c = static_cast<char>('a' + std::abs(l) - 1);
      s += l > 0 ? c : static_cast<char>(c - 'a' + 'A');
    }
    return s;
  }

  // ------------------------------------------------------------------
  // Folding by one identification at a time, then pruning.

  struct NaiveGraph {
    unsigned                              base = 0;
    std::set<unsigned>                    vertices;
    std::set<std::tuple<unsigned, int, unsigned>> edges;  // (u, label > 0, v)
  };

  inline NaiveGraph naive_fold(wordmaps::PreGraph const& pre) {
    NaiveGraph g;
    g.base = pre.base;
    for (unsigned v = 0; v < pre.num_vertices; ++v) {
      g.vertices.insert(v);
    }
    for (auto const& e : pre.edges) {
      g.edges.emplace(e.source, e.label, e.target);
    }
    auto merge = [&](unsigned keep, unsigned gone) {
      std::set<std::tuple<unsigned, int, unsigned>> next;
      for (auto [u, l, v] : g.edges) {
        next.emplace(u == gone ? keep : u, l, v == gone ? keep : v);
      }
      g.edges = std::move(next);
      g.vertices.erase(gone);
      if (g.base == gone) {
        g.base = keep;
      }
    };
    while (true) {
      bool done = true;
      for (auto const& [u1, l1, v1] : g.edges) {
        for (auto const& [u2, l2, v2] : g.edges) {
          if (l1 != l2) {
            continue;
          }
          if (u1 == u2 && v1 != v2) {
            merge(std::min(v1, v2), std::max(v1, v2));
            done = false;
          } else if (v1 == v2 && u1 != u2) {
            merge(std::min(u1, u2), std::max(u1, u2));
            done = false;
          }
          if (!done) {
            break;
          }
        }
        if (!done) {
          break;
        }
      }
      if (done) {
        break;
      }
    }
    // Drop vertices unreachable from the base.
    std::set<unsigned>    seen{g.base};
    std::vector<unsigned> stack{g.base};
    while (!stack.empty()) {
      unsigned x = stack.back();
      stack.pop_back();
      for (auto [u, l, v] : g.edges) {
        for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
          if (a == x && !seen.count(b)) {
            seen.insert(b);
            stack.push_back(b);
          }
        }
      }
    }
    g.vertices = seen;
    std::erase_if(g.edges, [&](auto const& e) { return !seen.count(std::get<0>(e)); });
    // Prune non-base vertices of degree one, repeatedly.
    while (true) {
      bool pruned = false;
      for (auto v : g.vertices) {
        if (v == g.base) {
          continue;
        }
        unsigned deg = 0;
        for (auto [a, l, b] : g.edges) {
          deg += (a == v ? 1 : 0) + (b == v ? 1 : 0);
        }
        if (deg <= 1) {
          std::erase_if(g.edges, [&](auto const& e) {
            return std::get<0>(e) == v || std::get<2>(e) == v;
          });
          g.vertices.erase(v);
          pruned = true;
          break;
        }
      }
      if (!pruned) {
        break;
      }
    }
    return g;
  }

  // Reads w from the base of a folded graph; true iff it returns to the base.
  inline bool naive_accepts(NaiveGraph const& g, Word const& w) {
    unsigned at = g.base;
    for (auto l : w.letters()) {
      bool moved = false;
      for (auto [u, lab, v] : g.edges) {
        if (l > 0 && lab == l && u == at) {
          at    = v;
          moved = true;
          break;
        }
        if (l < 0 && lab == -l && v == at) {
          at    = u;
          moved = true;
          break;
        }
      }
      if (!moved) {
        return false;
      }
    }
    return at == g.base;
  }

  // ------------------------------------------------------------------
  // Quotients: every set partition of the vertices, folded.

  inline void set_partitions(unsigned                                 n,
                             std::vector<unsigned>&                   cur,
                             unsigned                                 blocks,
                             std::vector<std::vector<unsigned>>&      out) {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (unsigned b = 0; b <= blocks; ++b) {
      cur.push_back(b);
      set_partitions(n, cur, std::max(blocks, b + 1), out);
      cur.pop_back();
    }
  }

  inline std::set<std::string> naive_quotient_keys(wordmaps::CoreGraph const& H) {
    std::vector<std::vector<unsigned>> parts;
    std::vector<unsigned>              cur;
    set_partitions(H.num_vertices(), cur, 0, parts);
    std::set<std::string> keys;
    for (auto const& p : parts) {
      wordmaps::PreGraph pre;
      pre.ambient_rank = H.ambient_rank();
      pre.num_vertices = *std::max_element(p.begin(), p.end()) + 1;
      pre.base         = p[0];
      for (auto const& e : H.edges()) {
        pre.edges.push_back({p[e.source], e.label, p[e.target]});
      }
      keys.insert(wordmaps::fold(pre).canonical_key());
    }
    return keys;
  }

  // ------------------------------------------------------------------
  // Primitive elements of F_2 up to cyclic length L, by breadth-first
  // search from x over Whitehead moves, staying within length L.  Words
  // are stored as the least rotation of the cyclically reduced form.

  inline std::vector<int> cyclic_letters(Word const& w) {
    std::vector<int> v(w.letters().begin(), w.letters().end());
    while (v.size() >= 2 && v.front() == -v.back()) {
      v.erase(v.begin());
      v.pop_back();
    }
    return v;
  }

  inline std::vector<int> least_rotation(std::vector<int> v) {
    auto best = v;
    for (std::size_t i = 1; i < v.size(); ++i) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      best = std::min(best, v);
    }
    return best;
  }

  inline std::set<std::vector<int>> primitive_cyclic_words(unsigned L) {
    std::set<std::vector<int>>    seen;
    std::vector<std::vector<int>> queue{{1}};
    seen.insert({1});
    auto const moves = wordmaps::enumerate_whitehead_moves(2);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Word const w(queue[head], 2);
      for (auto const& m : moves) {
        auto v = least_rotation(cyclic_letters(m.apply(w)));
        if (v.size() <= L && seen.insert(v).second) {
          queue.push_back(v);
        }
      }
    }
    return seen;
  }

  // ------------------------------------------------------------------
  // Symmetric group brute force with Permutation values only.

  inline Permutation evaluate(Word const& w, std::vector<Permutation> const& tuple) {
    unsigned    N = tuple.front().degree();
    Permutation p = Permutation::identity(N);
    for (auto l : w.letters()) {
      auto const& s = tuple[static_cast<std::size_t>(std::abs(l) - 1)];
      p             = wordmaps::compose(p, l > 0 ? s : s.inverse());
    }
    return p;
  }

  // Average of f(w(σ)) over all tuples in S_N^rank.
  template <typename F>
  Rational average_over_tuples(Word const& w, unsigned N, F const& f) {
    auto const                 all  = wordmaps::all_permutations(N);
    unsigned const             rank = w.rank();
    std::vector<std::size_t>   idx(rank, 0);
    mpz_class                  total = 0, count = 0;
    while (true) {
      std::vector<Permutation> tuple;
      for (auto i : idx) {
        tuple.push_back(all[i]);
      }
      total += f(evaluate(w, tuple));
      count += 1;
      std::size_t j = 0;
      while (j < rank && ++idx[j] == all.size()) {
        idx[j] = 0;
        ++j;
      }
      if (j == rank) {
        break;
      }
    }
    Rational q(total, count);
    q.canonicalize();
    return q;
  }

  inline Rational naive_trw(Word const& w, unsigned N) {
    return average_over_tuples(w, N, [](Permutation const& p) { return p.fixed_points(); });
  }

  // τ^d by repeated composition.
  inline Permutation repeated_power(Permutation const& t, unsigned d) {
    Permutation p = Permutation::identity(t.degree());
    for (unsigned i = 0; i < d; ++i) {
      p = wordmaps::compose(p, t);
    }
    return p;
  }

  inline std::set<Permutation> dth_powers(unsigned N, unsigned d) {
    std::set<Permutation> s;
    for (auto const& t : wordmaps::all_permutations(N)) {
      s.insert(repeated_power(t, d));
    }
    return s;
  }

  // Number of t-cycles by walking the permutation.
  inline unsigned count_cycles(Permutation const& p, unsigned t) {
    std::vector<bool> done(p.degree(), false);
    unsigned          c = 0;
    for (unsigned s = 0; s < p.degree(); ++s) {
      if (done[s]) {
        continue;
      }
      unsigned len = 0;
      for (unsigned x = s; !done[x]; x = p(x)) {
        done[x] = true;
        ++len;
      }
      c += len == t ? 1 : 0;
    }
    return c;
  }

}  // namespace oracle

#endif  // WORDMAPS_TESTS_ORACLES_HPP_
