#include "wordmaps/extensions.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "wordmaps/error.hpp"
#include "wordmaps/whitehead.hpp"

namespace wordmaps {

  Word rewrite_in_basis(CoreGraph const& J, Word const& w) {
    unsigned const r     = J.ambient_rank();
    auto const     slots = J.basis_slots();
    unsigned const k     = std::max(1u, J.rank());
    std::vector<letter_type> out;
    unsigned                 v = 0;
    for (auto l : w.letters()) {
      int t = J.follow(v, l);
      if (t == CoreGraph::none) {
        throw ArgumentError("rewrite_in_basis: " + w.to_string()
                            + " is not in the subgroup");
      }
      unsigned    src  = l > 0 ? v : static_cast<unsigned>(t);
      unsigned    slot = slots[static_cast<std::size_t>(src) * r
                            + generator_of(l) - 1];
      if (slot != 0) {
        out.push_back(l > 0 ? static_cast<letter_type>(slot)
                            : -static_cast<letter_type>(slot));
      }
      v = static_cast<unsigned>(t);
    }
    if (v != 0) {
      throw ArgumentError("rewrite_in_basis: " + w.to_string()
                          + " is not in the subgroup");
    }
    return Word(std::move(out), k);
  }

  CoreGraph relative_subgroup(CoreGraph const& H, CoreGraph const& J) {
    std::vector<Word> gens;
    for (auto const& b : H.basis()) {
      gens.push_back(rewrite_in_basis(J, b));
    }
    return CoreGraph::from_generators(gens, std::max(1u, J.rank()));
  }

  ////////////////////////////////////////////////////////////////////////
  // Free factors
  ////////////////////////////////////////////////////////////////////////

  namespace {
    CoreGraph apply_move(WhiteheadMove const& move, CoreGraph const& g) {
      std::vector<Word> images;
      for (auto const& b : g.basis()) {
        images.push_back(move.apply(b));
      }
      return conjugacy_normal_form(
          CoreGraph::from_generators(images, g.ambient_rank()));
    }
  }  // namespace

  bool is_free_factor_of_ambient(CoreGraph const&        M,
                                 ExtensionOptions const& options) {
    unsigned const k = M.ambient_rank();
    unsigned const m = M.rank();
    if (m == 0) {
      return true;
    }
    if (m > k) {
      return false;
    }
    if (m == k) {
      return M == CoreGraph::rose(k);
    }
    if (k > options.max_rank) {
      throw BudgetExceeded("free-factor test in rank " + std::to_string(k)
                           + " exceeds the rank cap "
                           + std::to_string(options.max_rank));
    }
    auto const  moves   = enumerate_multiplier_moves(k);
    CoreGraph   state   = conjugacy_normal_form(M);
    std::size_t visited = 0;
    // Each round searches the plateau of the current size breadth-first for
    // a strictly smaller graph.  By peak reduction a free factor always
    // admits descent until it becomes a rose on m letters.
    while (true) {
      std::size_t const size = state.num_edges();
      if (size == m) {
        return true;
      }
      std::set<std::string>  seen{state.canonical_key()};
      std::vector<CoreGraph> queue{state};
      bool                   descended = false;
      for (std::size_t head = 0; head < queue.size() && !descended; ++head) {
        CoreGraph const current = queue[head];
        for (auto const& move : moves) {
          auto next = apply_move(move, current);
          if (next.num_edges() < size) {
            state     = std::move(next);
            descended = true;
            break;
          }
          if (next.num_edges() == size
              && seen.insert(next.canonical_key()).second) {
            if (++visited > options.search_budget) {
              throw BudgetExceeded("Whitehead search exceeded "
                                   + std::to_string(options.search_budget)
                                   + " states");
            }
            queue.push_back(std::move(next));
          }
        }
      }
      if (!descended) {
        return false;
      }
    }
  }

  bool is_free_factor(CoreGraph const&        M,
                      CoreGraph const&        J,
                      ExtensionOptions const& options) {
    if (!subgroup_leq(M, J)) {
      throw ArgumentError("is_free_factor: M is not contained in J");
    }
    if (M.rank() == 0 || M == J) {
      return true;
    }
    // A free factor of equal rank is the whole group.
    if (M.rank() >= J.rank()) {
      return false;
    }
    if (J.rank() > options.max_rank) {
      throw BudgetExceeded("is_free_factor: rank(J) = "
                           + std::to_string(J.rank())
                           + " exceeds the rank cap "
                           + std::to_string(options.max_rank));
    }
    return is_free_factor_of_ambient(relative_subgroup(M, J), options);
  }

  ////////////////////////////////////////////////////////////////////////
  // Poset
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::size_t> ExtensionPoset::algebraic_indices() const {
    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (algebraic[i]) {
        result.push_back(i);
      }
    }
    return result;
  }

  std::vector<std::size_t> ExtensionPoset::proper_algebraic_indices() const {
    auto result = algebraic_indices();
    std::erase(result, base_index);
    return result;
  }

  std::optional<std::size_t> ExtensionPoset::index_of(CoreGraph const& g) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), g);
    if (it != nodes.end() && *it == g) {
      return static_cast<std::size_t>(it - nodes.begin());
    }
    return std::nullopt;
  }

  namespace {
    CoreGraph rose_on(std::vector<unsigned> const& labels, unsigned rank) {
      std::vector<Word> gens;
      for (auto l : labels) {
        gens.push_back(Word::generator(l, rank));
      }
      return CoreGraph::from_generators(gens, rank);
    }
  }  // namespace

  ExtensionPoset algebraic_extensions(CoreGraph const&        H,
                                      ExtensionOptions const& options) {
    ExtensionPoset poset{H, {}, 0, 0, {}, {}, {}};
    poset.nodes = quotients(H, {options.max_vertices, options.workers});
    std::size_t const n = poset.nodes.size();

    auto base = poset.index_of(H);
    auto top  = poset.index_of(rose_on(H.labels(), H.ambient_rank()));
    if (!base || !top) {
      throw InvariantError("quotient set misses the base or the top node");
    }
    poset.base_index = *base;
    poset.top_index  = *top;

    poset.leq.assign(n, std::vector<bool>(n, false));
    poset.free_factor.assign(n, std::vector<bool>(n, false));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        poset.leq[i][j] = (i == j) || subgroup_leq(poset.nodes[i], poset.nodes[j]);
        if (i == j) {
          poset.free_factor[i][j] = true;
        } else if (poset.leq[i][j]
                   && poset.nodes[i].rank() < poset.nodes[j].rank()) {
          // A proper free factor has strictly smaller rank.
          pairs.emplace_back(i, j);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!poset.leq[poset.base_index][i]) {
        throw InvariantError("a quotient node does not contain the base");
      }
    }

    // Independent tests; each result lands in its own slot.
    std::vector<char> results(pairs.size(), 0);
    unsigned const    workers = std::max(1u, options.workers);
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned id) {
      try {
        for (std::size_t p = id; p < pairs.size(); p += workers) {
          auto [i, j] = pairs[p];
          results[p]  = is_free_factor(poset.nodes[i], poset.nodes[j], options);
        }
      } catch (...) {
        errors[id] = std::current_exception();
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
    for (auto const& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      poset.free_factor[pairs[p].first][pairs[p].second] = results[p] != 0;
    }

    poset.algebraic.assign(n, true);
    for (auto [i, j] : pairs) {
      if (poset.free_factor[i][j]) {
        poset.algebraic[j] = false;
      }
    }
    if (!poset.algebraic[poset.base_index]) {
      throw InvariantError("base node not marked algebraic");
    }
    return poset;
  }

  RankInvariant pi(CoreGraph const& H, ExtensionOptions const& options) {
    auto          poset = algebraic_extensions(H, options);
    RankInvariant result;
    for (auto i : poset.proper_algebraic_indices()) {
      unsigned r = poset.nodes[i].rank();
      if (!result.value || r < *result.value) {
        result.value = r;
        result.count = 1;
      } else if (r == *result.value) {
        ++result.count;
      }
    }
    return result;
  }

  RankInvariant pi_of_word(Word const& w, ExtensionOptions const& options) {
    return pi(CoreGraph::from_generators({w}, w.rank()), options);
  }

  CoreGraph ff_closure(CoreGraph const&        H,
                       CoreGraph const&        J,
                       ExtensionOptions const& options) {
    if (!subgroup_leq(H, J)) {
      throw ArgumentError("ff_closure: H is not contained in J");
    }
    std::vector<CoreGraph> candidates{J};
    for (auto const& q : quotients(H, {options.max_vertices, options.workers})) {
      if (q != J && subgroup_leq(q, J) && is_free_factor(q, J, options)) {
        candidates.push_back(q);
      }
    }
    std::vector<CoreGraph const*> minimal;
    for (auto const& c : candidates) {
      bool is_minimal = true;
      for (auto const& d : candidates) {
        if (d != c && subgroup_leq(d, c)) {
          is_minimal = false;
          break;
        }
      }
      if (is_minimal) {
        minimal.push_back(&c);
      }
    }
    if (minimal.size() != 1) {
      throw InvariantError("ff_closure: expected a unique minimal free factor "
                           "containing H, found "
                           + std::to_string(minimal.size()));
    }
    for (auto const& c : candidates) {
      if (!subgroup_leq(*minimal.front(), c)) {
        throw InvariantError("ff_closure: minimal free factor not contained "
                             "in every free factor containing H");
      }
    }
    return *minimal.front();
  }

  void validate_free_images(std::span<Word const> images) {
    if (images.empty()) {
      throw ArgumentError("at least one image is required");
    }
    unsigned r = images.front().rank();
    for (auto const& u : images) {
      if (u.rank() != r) {
        throw ArgumentError("images must share an ambient rank");
      }
    }
    auto J = CoreGraph::from_generators(images, r);
    if (J.rank() != images.size()) {
      throw HypothesisError("images-free",
                            "the images generate a subgroup of rank "
                                + std::to_string(J.rank()) + ", not "
                                + std::to_string(images.size()));
    }
  }

  RankInvariant pi_iota(CoreGraph const&        H,
                        std::span<Word const>   images,
                        ExtensionOptions const& options) {
    unsigned const k = static_cast<unsigned>(images.size());
    if (H.ambient_rank() != k) {
      throw ArgumentError("pi_iota: H lives in F_"
                          + std::to_string(H.ambient_rank()) + " but "
                          + std::to_string(k) + " images were given");
    }
    validate_free_images(images);
    auto const J = CoreGraph::rose(k);
    if (ff_closure(H, J, options) != J) {
      throw HypothesisError("H-algebraic-in-J",
                            "H is contained in a proper free factor of F_"
                                + std::to_string(k));
    }
    unsigned const    r = images.front().rank();
    std::vector<Word> gens;
    for (auto const& b : H.basis()) {
      gens.push_back(substitute(b, images));
    }
    auto const iota_H = CoreGraph::from_generators(gens, r);
    auto const iota_J = CoreGraph::from_generators(images, r);
    auto const poset  = algebraic_extensions(iota_H, options);

    RankInvariant result;
    for (auto i : poset.algebraic_indices()) {
      auto const& M = poset.nodes[i];
      if (subgroup_leq(M, iota_J)) {
        continue;
      }
      if (!result.value || M.rank() < *result.value) {
        result.value = M.rank();
        result.count = 1;
      } else if (M.rank() == *result.value) {
        ++result.count;
      }
    }
    bool const j_free_factor
        = is_free_factor(iota_J, CoreGraph::rose(r), options);
    if (j_free_factor == result.value.has_value()) {
      throw InvariantError(
          "pi_iota: finiteness disagrees with the free-factor test on iota(J)");
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Export
  ////////////////////////////////////////////////////////////////////////

  std::string key_to_hex(std::string const& key) {
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned char c : key) {
      os << std::setw(2) << static_cast<unsigned>(c);
    }
    return os.str();
  }

  namespace {
    std::string basis_string(CoreGraph const& g) {
      std::string s;
      for (auto const& b : g.basis()) {
        if (!s.empty()) {
          s += ", ";
        }
        s += b.to_string();
      }
      return "<" + s + ">";
    }
  }  // namespace

  std::string poset_to_json(ExtensionPoset const& poset) {
    nlohmann::ordered_json j;
    j["base"] = basis_string(poset.base);
    auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < poset.nodes.size(); ++i) {
      auto const&            g = poset.nodes[i];
      nlohmann::ordered_json node;
      node["index"] = i;
      node["key"]   = key_to_hex(g.canonical_key());
      node["rank"]  = g.rank();
      std::vector<std::string> basis;
      for (auto const& b : g.basis()) {
        basis.push_back(b.to_string());
      }
      node["basis"]     = basis;
      node["algebraic"] = static_cast<bool>(poset.algebraic[i]);
      nodes.push_back(node);
    }
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < poset.nodes.size(); ++a) {
      for (std::size_t b = 0; b < poset.nodes.size(); ++b) {
        if (a != b && poset.leq[a][b]) {
          edges.push_back({{"from", a},
                           {"to", b},
                           {"free_factor",
                            static_cast<bool>(poset.free_factor[a][b])}});
        }
      }
    }
    return j.dump(2);
  }

  std::string poset_to_dot(ExtensionPoset const& poset) {
    auto const         alg = poset.algebraic_indices();
    std::ostringstream os;
    os << "digraph algebraic_extensions {\n";
    for (auto i : alg) {
      os << "  n" << i << " [label=\"" << basis_string(poset.nodes[i])
         << "\\nrank " << poset.nodes[i].rank() << "\"";
      if (i == poset.base_index) {
        os << ", shape=doublecircle";
      }
      os << "];\n";
    }
    for (auto a : alg) {
      for (auto b : alg) {
        if (a == b || !poset.leq[a][b]) {
          continue;
        }
        bool covered = true;
        for (auto c : alg) {
          if (c != a && c != b && poset.leq[a][c] && poset.leq[c][b]) {
            covered = false;
            break;
          }
        }
        if (covered) {
          os << "  n" << a << " -> n" << b << ";\n";
        }
      }
    }
    os << "}\n";
    return os.str();
  }

}  // namespace wordmaps
