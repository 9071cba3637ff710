#include "wordmaps/measures.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "enumeration.hpp"
#include "wordmaps/error.hpp"
#include "wordmaps/permutation.hpp"
#include "wordmaps/rng.hpp"

namespace wordmaps {

  namespace {
    using detail::SymmetricTables;
    using detail::WordProgram;

    Rational ratio(mpz_class const& num, mpz_class const& den) {
      Rational q(num, den);
      q.canonicalize();
      return q;
    }

    mpz_class big_power(std::uint64_t base, unsigned m) {
      mpz_class r = 1;
      for (unsigned i = 0; i < m; ++i) {
        r *= mpz_class(std::to_string(base));
      }
      return r;
    }

    mpz_class big(std::uint64_t x) {
      return mpz_class(std::to_string(x));
    }

    std::uint64_t safe_factorial(unsigned N) {
      return N <= 20 ? factorial(N) : UINT64_MAX;
    }

    void check_degree(unsigned N) {
      if (N == 0) {
        throw ArgumentError("N must be positive");
      }
    }

    // Index of p among all permutations of its degree, lexicographically.
    std::uint64_t lehmer_rank(std::span<std::uint8_t const> p) {
      std::uint64_t r = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        unsigned smaller = 0;
        for (std::size_t j = i + 1; j < p.size(); ++j) {
          smaller += p[j] < p[i] ? 1 : 0;
        }
        r = r * (p.size() - i) + smaller;
      }
      return r;
    }

    // Image of every point under the word on the current tuple.
    void evaluate_full(std::vector<std::pair<unsigned, bool>> const& prog,
                       SymmetricTables const&                        tables,
                       std::span<std::uint32_t const>                idx,
                       std::vector<std::uint8_t>&                    out) {
      unsigned const N = tables.degree;
      for (unsigned p = 0; p < N; ++p) {
        unsigned x = p;
        for (auto [c, inv] : prog) {
          x = tables.row(idx[c], inv)[x];
        }
        out[p] = static_cast<std::uint8_t>(x);
      }
    }
  }  // namespace

  Rational phi_exact(std::span<Word const>     generators,
                     unsigned                  ambient_rank,
                     unsigned                  N,
                     EnumerationOptions const& options,
                     Evaluation                how) {
    check_degree(N);
    std::vector<Word> nontrivial;
    for (auto const& g : generators) {
      if (g.max_generator() > ambient_rank) {
        throw ArgumentError("phi_exact: generator " + g.to_string()
                            + " exceeds ambient rank "
                            + std::to_string(ambient_rank));
      }
      if (!g.is_identity()) {
        nontrivial.push_back(g);
      }
    }
    if (nontrivial.empty()) {
      return Rational(N);
    }
    WordProgram const prog(nontrivial);
    unsigned const    m = prog.arity();
    detail::check_budget(detail::saturating_power(safe_factorial(N), m), prog.total_length,
                         options.work_budget, "phi_exact");
    SymmetricTables const tables(N);
    unsigned const        workers = std::max(1u, options.workers);
    std::vector<std::uint64_t> partial(workers, 0);

    if (how == Evaluation::traced) {
      detail::sweep(tables.count, m, workers,
                    [&](std::span<std::uint32_t const> idx, unsigned w) {
                      for (auto const& word : prog.words) {
                        unsigned x = 0;
                        for (auto [c, inv] : word) {
                          x = tables.row(idx[c], inv)[x];
                        }
                        if (x != 0) {
                          return;
                        }
                      }
                      ++partial[w];
                    });
    } else {
      detail::sweep(tables.count, m, workers,
                    [&](std::span<std::uint32_t const> idx, unsigned w) {
                      for (unsigned p = 0; p < N; ++p) {
                        bool fixed = true;
                        for (auto const& word : prog.words) {
                          unsigned x = p;
                          for (auto [c, inv] : word) {
                            x = tables.row(idx[c], inv)[x];
                          }
                          if (x != p) {
                            fixed = false;
                            break;
                          }
                        }
                        partial[w] += fixed ? 1 : 0;
                      }
                    });
    }
    mpz_class total = 0;
    for (auto x : partial) {
      total += big(x);
    }
    if (how == Evaluation::traced) {
      total *= N;
    }
    return ratio(total, big_power(tables.count, m));
  }

  Rational trw_exact(Word const&               w,
                     unsigned                  N,
                     EnumerationOptions const& options,
                     Evaluation                how) {
    return phi_exact(std::span<Word const>(&w, 1), w.rank(), N, options, how);
  }

  Rational phi_relative_exact(std::span<Word const>     generators_in_basis,
                              unsigned                  k,
                              unsigned                  N,
                              EnumerationOptions const& options) {
    return phi_exact(generators_in_basis, k, N, options, Evaluation::traced);
  }

  MeasureTable word_measure_exact(Word const&               w,
                                  SymmetricGroup            G,
                                  EnumerationOptions const& options) {
    unsigned const N = G.degree;
    check_degree(N);
    WordProgram const prog(std::span<Word const>(&w, 1));
    unsigned const    m = prog.arity();
    detail::check_budget(detail::saturating_power(safe_factorial(N), m),
                         prog.total_length, options.work_budget,
                         "word_measure_exact");
    SymmetricTables const tables(N);

    MeasureTable table;
    table.group = "S" + std::to_string(N);
    std::map<std::vector<unsigned>, std::size_t> class_index;
    for (auto const& part : partitions_of(N)) {
      class_index.emplace(part, table.class_labels.size());
      CycleType ct;
      ct.degree = N;
      std::uint64_t denom = 1;
      std::map<unsigned, unsigned> counts;
      for (auto p : part) {
        ++counts[p];
      }
      for (auto [t, c] : counts) {
        ct.counts[t] = c;
        for (unsigned i = 0; i < c; ++i) {
          denom *= t;
        }
        denom *= factorial(c);
      }
      table.class_labels.push_back(ct.to_string());
      table.class_sizes.push_back(factorial(N) / denom);
    }

    bool const     elementwise = tables.count <= 24;
    unsigned const workers     = std::max(1u, options.workers);
    std::vector<std::vector<std::uint64_t>> per_class(
        workers, std::vector<std::uint64_t>(table.class_labels.size(), 0));
    std::vector<std::vector<std::uint64_t>> per_element(
        workers, std::vector<std::uint64_t>(elementwise ? tables.count : 0, 0));

    detail::sweep(tables.count, m, workers,
                  [&](std::span<std::uint32_t const> idx, unsigned wk) {
                    std::vector<std::uint8_t> img(N);
                    evaluate_full(prog.words.front(), tables, idx, img);
                    std::vector<unsigned> part;
                    std::vector<bool>     done(N, false);
                    for (unsigned s = 0; s < N; ++s) {
                      unsigned len = 0;
                      for (unsigned x = s; !done[x]; x = img[x]) {
                        done[x] = true;
                        ++len;
                      }
                      if (len > 0) {
                        part.push_back(len);
                      }
                    }
                    std::sort(part.rbegin(), part.rend());
                    ++per_class[wk][class_index.at(part)];
                    if (elementwise) {
                      ++per_element[wk][lehmer_rank(img)];
                    }
                  });

    std::vector<std::uint64_t> totals(table.class_labels.size(), 0);
    for (auto const& v : per_class) {
      for (std::size_t c = 0; c < v.size(); ++c) {
        totals[c] += v[c];
      }
    }
    if (elementwise) {
      std::vector<std::uint64_t> elem(tables.count, 0);
      for (auto const& v : per_element) {
        for (std::size_t e = 0; e < v.size(); ++e) {
          elem[e] += v[e];
        }
      }
      std::vector<std::optional<std::uint64_t>> seen(table.class_labels.size());
      for (std::uint64_t e = 0; e < tables.count; ++e) {
        auto row = std::span<std::uint8_t const>(tables.row(e, false), N);
        std::vector<std::uint8_t> img(row.begin(), row.end());
        auto ct = Permutation(std::vector<Permutation::point_type>(img.begin(), img.end()))
                      .cycle_type()
                      .partition();
        auto c = class_index.at(ct);
        if (seen[c] && *seen[c] != elem[e]) {
          throw InvariantError("word measure is not conjugation invariant on "
                               + table.group);
        }
        seen[c] = elem[e];
      }
    }
    mpz_class const denom = big_power(tables.count, m);
    for (auto t : totals) {
      table.probabilities.push_back(ratio(big(t), denom));
    }
    return table;
  }

  MeasureTable word_measure_exact(Word const&               w,
                                  FiniteGroupTable const&   G,
                                  EnumerationOptions const& options) {
    using element = FiniteGroupTable::element_type;
    WordProgram const prog(std::span<Word const>(&w, 1));
    unsigned const    m = prog.arity();
    std::size_t const n = G.order();
    if (m >= 2 && n > 64) {
      throw BudgetExceeded("exact enumeration over table groups is capped at "
                           "order 64 for two or more letters");
    }
    detail::check_budget(detail::saturating_power(n, m), prog.total_length,
                         options.work_budget, "word_measure_exact");
    unsigned const workers = std::max(1u, options.workers);
    std::vector<std::vector<std::uint64_t>> per_element(
        workers, std::vector<std::uint64_t>(n, 0));
    detail::sweep(n, m, workers,
                  [&](std::span<std::uint32_t const> idx, unsigned wk) {
                    element g = 0;
                    for (auto [c, inv] : prog.words.front()) {
                      element h = static_cast<element>(idx[c]);
                      g         = G.multiply(g, inv ? G.inverse(h) : h);
                    }
                    ++per_element[wk][g];
                  });
    std::vector<std::uint64_t> elem(n, 0);
    for (auto const& v : per_element) {
      for (std::size_t e = 0; e < n; ++e) {
        elem[e] += v[e];
      }
    }
    auto const& classes = G.classes();
    if (n <= 24) {
      for (auto const& cls : classes) {
        for (auto e : cls) {
          if (elem[e] != elem[cls.front()]) {
            throw InvariantError("word measure is not conjugation invariant on "
                                 + G.label());
          }
        }
      }
    }
    MeasureTable table;
    table.group       = G.label();
    mpz_class const d = big_power(n, m);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::uint64_t total = 0;
      for (auto e : classes[c]) {
        total += elem[e];
      }
      table.class_labels.push_back(G.class_label(c));
      table.class_sizes.push_back(classes[c].size());
      table.probabilities.push_back(ratio(big(total), d));
    }
    return table;
  }

  MeasureComparison compare_measures(MeasureTable const& a, MeasureTable const& b) {
    if (a.group != b.group || a.class_labels != b.class_labels) {
      throw ArgumentError("compare_measures: tables describe different groups");
    }
    MeasureComparison result;
    std::optional<std::size_t> support, value;
    for (std::size_t c = 0; c < a.probabilities.size(); ++c) {
      auto const& p = a.probabilities[c];
      auto const& q = b.probabilities[c];
      if (p == q) {
        continue;
      }
      if (!value) {
        value = c;
      }
      if (!support && (sgn(p) == 0 || sgn(q) == 0)) {
        support = c;
      }
    }
    if (!value) {
      return result;
    }
    std::size_t const c  = support ? *support : *value;
    result.equal         = false;
    result.witness       = c;
    result.witness_label = a.class_labels[c];
    result.first         = a.probabilities[c];
    result.second        = b.probabilities[c];
    return result;
  }

  MeasureComparison compare_measures(Word const&               w1,
                                     Word const&               w2,
                                     SymmetricGroup            G,
                                     EnumerationOptions const& options) {
    return compare_measures(word_measure_exact(w1, G, options),
                            word_measure_exact(w2, G, options));
  }

  MeasureComparison compare_measures(Word const&               w1,
                                     Word const&               w2,
                                     FiniteGroupTable const&   G,
                                     EnumerationOptions const& options) {
    return compare_measures(word_measure_exact(w1, G, options),
                            word_measure_exact(w2, G, options));
  }

  std::vector<FiniteGroupTable::element_type>
  epi_image(Word const&               w,
            FiniteGroupTable const&   G,
            unsigned                  r,
            EnumerationOptions const& options) {
    using element = FiniteGroupTable::element_type;
    if (r == 0 || w.max_generator() > r) {
      throw ArgumentError("epi_image: word " + w.to_string()
                          + " does not live in F_" + std::to_string(r));
    }
    std::size_t const n = G.order();
    if (r >= 2 && n > 64) {
      throw BudgetExceeded("exact enumeration over table groups is capped at "
                           "order 64 for rank two or more");
    }
    std::uint64_t const per_tuple = std::max<std::uint64_t>(w.length(), 1) + n * r;
    detail::check_budget(detail::saturating_power(n, r), per_tuple,
                         options.work_budget, "epi_image");
    unsigned const workers = std::max(1u, options.workers);
    std::vector<std::vector<char>> hit(workers, std::vector<char>(n, 0));
    detail::sweep(n, r, workers,
                  [&](std::span<std::uint32_t const> idx, unsigned wk) {
                    std::vector<char>    reached(n, 0);
                    std::vector<element> queue{0};
                    reached[0] = 1;
                    for (std::size_t head = 0; head < queue.size(); ++head) {
                      for (auto g : idx) {
                        element y = G.multiply(queue[head], static_cast<element>(g));
                        if (!reached[y]) {
                          reached[y] = 1;
                          queue.push_back(y);
                        }
                      }
                    }
                    if (queue.size() != n) {
                      return;
                    }
                    element v = 0;
                    for (auto l : w.letters()) {
                      element h = static_cast<element>(idx[generator_of(l) - 1]);
                      v         = G.multiply(v, l < 0 ? G.inverse(h) : h);
                    }
                    hit[wk][v] = 1;
                  });
    std::vector<element> out;
    for (std::size_t e = 0; e < n; ++e) {
      for (auto const& h : hit) {
        if (h[e]) {
          out.push_back(static_cast<element>(e));
          break;
        }
      }
    }
    return out;
  }

  MonteCarloEstimate trw_monte_carlo(Word const&   w,
                                     unsigned      N,
                                     std::uint64_t samples,
                                     std::uint64_t seed,
                                     unsigned      workers) {
    check_degree(N);
    if (samples < 2) {
      throw ArgumentError("trw_monte_carlo: need at least 2 samples");
    }
    WordProgram const prog(std::span<Word const>(&w, 1));
    unsigned const    m    = prog.arity();
    auto const&       word = prog.words.front();

    std::vector<std::uint64_t> sum(monte_carlo_shards, 0), sumsq(monte_carlo_shards, 0);
    detail::run_shards(monte_carlo_shards, workers, [&](unsigned s) {
      std::uint64_t const todo = samples / monte_carlo_shards
                                 + (s < samples % monte_carlo_shards ? 1 : 0);
      Rng rng(seed, s);
      std::vector<std::vector<std::uint32_t>> fwd(m, std::vector<std::uint32_t>(N));
      std::vector<std::vector<std::uint32_t>> bwd(m, std::vector<std::uint32_t>(N));
      for (std::uint64_t i = 0; i < todo; ++i) {
        for (unsigned c = 0; c < m; ++c) {
          std::iota(fwd[c].begin(), fwd[c].end(), 0u);
          rng.shuffle(std::span<std::uint32_t>(fwd[c]));
          for (unsigned p = 0; p < N; ++p) {
            bwd[c][fwd[c][p]] = p;
          }
        }
        std::uint64_t fix = 0;
        for (unsigned p = 0; p < N; ++p) {
          unsigned x = p;
          for (auto [c, inv] : word) {
            x = inv ? bwd[c][x] : fwd[c][x];
          }
          fix += x == p ? 1 : 0;
        }
        sum[s] += fix;
        sumsq[s] += fix * fix;
      }
    });
    std::uint64_t S = 0, SS = 0;
    for (unsigned s = 0; s < monte_carlo_shards; ++s) {
      S += sum[s];
      SS += sumsq[s];
    }
    long double const n    = static_cast<long double>(samples);
    long double const mean = S / n;
    long double       var  = (SS - S * mean) / (n - 1);
    if (var < 0) {
      var = 0;
    }
    MonteCarloEstimate est;
    est.estimate       = static_cast<double>(mean);
    est.standard_error = static_cast<double>(std::sqrt(var / n));
    est.samples        = samples;
    return est;
  }

}  // namespace wordmaps
