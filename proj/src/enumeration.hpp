// Internal helpers shared by the exact enumerators.
#ifndef WORDMAPS_SRC_ENUMERATION_HPP_
#define WORDMAPS_SRC_ENUMERATION_HPP_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "wordmaps/error.hpp"
#include "wordmaps/word.hpp"

namespace wordmaps::detail {

  // All N! permutations of 0..N-1 in lexicographic order, forward and
  // inverse images stored flat.
  struct SymmetricTables {
    unsigned                  degree = 0;
    std::uint64_t             count  = 0;
    std::vector<std::uint8_t> forward;
    std::vector<std::uint8_t> backward;

    explicit SymmetricTables(unsigned n) : degree(n) {
      if (n > 10) {
        throw BudgetExceeded("exact enumeration over S_" + std::to_string(n)
                             + " is not supported (degree cap 10)");
      }
      std::vector<std::uint8_t> p(n);
      std::iota(p.begin(), p.end(), std::uint8_t{0});
      do {
        forward.insert(forward.end(), p.begin(), p.end());
        std::vector<std::uint8_t> inv(n);
        for (unsigned i = 0; i < n; ++i) {
          inv[p[i]] = static_cast<std::uint8_t>(i);
        }
        backward.insert(backward.end(), inv.begin(), inv.end());
        ++count;
      } while (std::next_permutation(p.begin(), p.end()));
    }

    std::uint8_t const* row(std::uint64_t index, bool inverse) const {
      return (inverse ? backward.data() : forward.data()) + index * degree;
    }
  };

  // A word (or several) rewritten over coordinates 0..m-1, one per used
  // generator.
  struct WordProgram {
    std::vector<unsigned>                           generators;  // coordinate -> x_i
    std::vector<std::vector<std::pair<unsigned, bool>>> words;   // (coordinate, inverse)
    std::uint64_t                                   total_length = 0;

    explicit WordProgram(std::span<Word const> ws) {
      generators = used_generators(ws);
      std::vector<unsigned> coord(max_rank + 1, 0);
      for (unsigned c = 0; c < generators.size(); ++c) {
        coord[generators[c]] = c;
      }
      for (auto const& w : ws) {
        std::vector<std::pair<unsigned, bool>> prog;
        for (auto l : w.letters()) {
          prog.emplace_back(coord[generator_of(l)], l < 0);
        }
        total_length += prog.size();
        words.push_back(std::move(prog));
      }
    }

    unsigned arity() const {
      return static_cast<unsigned>(generators.size());
    }
  };

  // count^m, or nullopt-like saturation at UINT64_MAX.
  inline std::uint64_t saturating_power(std::uint64_t base, unsigned m) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < m; ++i) {
      if (base != 0 && r > UINT64_MAX / base) {
        return UINT64_MAX;
      }
      r *= base;
    }
    return r;
  }

  inline void check_budget(std::uint64_t tuples,
                           std::uint64_t length,
                           std::uint64_t budget,
                           std::string const& what) {
    std::uint64_t const per = std::max<std::uint64_t>(length, 1);
    if (tuples == UINT64_MAX || tuples > budget / per) {
      throw BudgetExceeded(what + ": enumeration needs more than "
                           + std::to_string(budget) + " work units");
    }
  }

  // Calls f(idx, worker) for every idx in [0, count)^m.  The outermost
  // coordinate is striped across workers: worker w takes idx[0] = w, w + k,
  // ...  With m == 0, f is called once on worker 0.
  template <typename F>
  void sweep(std::uint64_t count, unsigned m, unsigned workers, F const& f) {
    workers = std::max(1u, workers);
    if (m == 0) {
      std::vector<std::uint32_t> none;
      f(std::span<std::uint32_t const>(none), 0u);
      return;
    }
    auto job = [&](unsigned w) {
      std::vector<std::uint32_t> idx(m, 0);
      for (std::uint64_t i0 = w; i0 < count; i0 += workers) {
        idx[0] = static_cast<std::uint32_t>(i0);
        std::fill(idx.begin() + 1, idx.end(), 0u);
        while (true) {
          f(std::span<std::uint32_t const>(idx), w);
          unsigned j = m - 1;
          while (j >= 1) {
            if (++idx[j] < count) {
              break;
            }
            idx[j] = 0;
            --j;
          }
          if (j == 0) {
            break;
          }
        }
      }
    };
    if (workers == 1) {
      job(0);
      return;
    }
    std::vector<std::thread>        threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          job(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) {
      t.join();
    }
    for (auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }

  // Runs job(shard) for shard in [0, shards) on `workers` threads, shard s
  // going to thread s mod workers.
  template <typename F>
  void run_shards(unsigned shards, unsigned workers, F const& job) {
    workers = std::max(1u, std::min(workers, shards));
    if (workers == 1) {
      for (unsigned s = 0; s < shards; ++s) {
        job(s);
      }
      return;
    }
    std::vector<std::thread>        threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (unsigned s = w; s < shards; s += workers) {
            job(s);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) {
      t.join();
    }
    for (auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }

}  // namespace wordmaps::detail

#endif  // WORDMAPS_SRC_ENUMERATION_HPP_
