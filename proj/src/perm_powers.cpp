#include "wordmaps/perm_powers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "enumeration.hpp"
#include "wordmaps/error.hpp"
#include "wordmaps/rng.hpp"

namespace wordmaps {

  bool is_prime(unsigned long long n) {
    if (n < 2) {
      return false;
    }
    for (unsigned long long q = 2; q * q <= n; ++q) {
      if (n % q == 0) {
        return false;
      }
    }
    return true;
  }

  unsigned nu_p(unsigned long long n, unsigned long long p) {
    if (n == 0) {
      throw ArgumentError("nu_p: n must be positive");
    }
    if (!is_prime(p)) {
      throw ArgumentError("nu_p: " + std::to_string(p) + " is not prime");
    }
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    return e;
  }

  unsigned long long power_block(unsigned long long t, unsigned long long d) {
    unsigned long long m = 1;
    for (unsigned long long p = 2; p <= t; ++p) {
      if (t % p == 0 && is_prime(p)) {
        for (unsigned e = nu_p(d, p); e > 0; --e) {
          m *= p;
        }
      }
    }
    return m;
  }

  bool is_dth_power(CycleType const& type, unsigned d) {
    if (d == 0) {
      throw ArgumentError("d must be positive");
    }
    for (auto [t, c] : type.counts) {
      if (c % power_block(t, d) != 0) {
        return false;
      }
    }
    return true;
  }

  bool is_dth_power(Permutation const& sigma, unsigned d) {
    return is_dth_power(sigma.cycle_type(), d);
  }

  std::optional<Permutation> dth_root(Permutation const& sigma, unsigned d) {
    if (!is_dth_power(sigma, d)) {
      return std::nullopt;
    }
    using point = Permutation::point_type;
    unsigned const N = sigma.degree();
    std::vector<point> root(N);
    std::iota(root.begin(), root.end(), point{0});

    // Cycles of each length, fixed points included, by smallest point.
    std::map<unsigned, std::vector<std::vector<point>>> by_length;
    std::vector<bool> done(N, false);
    for (point s = 0; s < N; ++s) {
      if (done[s]) {
        continue;
      }
      std::vector<point> c;
      for (point x = s; !done[x]; x = sigma(x)) {
        done[x] = true;
        c.push_back(x);
      }
      by_length[static_cast<unsigned>(c.size())].push_back(std::move(c));
    }
    for (auto const& [t, cycles] : by_length) {
      auto const        m = static_cast<std::size_t>(power_block(t, d));
      std::size_t const L = t * m;
      for (std::size_t g = 0; g < cycles.size(); g += m) {
        std::vector<point> big(L);
        for (std::size_t j = 0; j < m; ++j) {
          for (std::size_t k = 0; k < t; ++k) {
            big[(j + k * static_cast<std::size_t>(d)) % L] = cycles[g + j][k];
          }
        }
        for (std::size_t i = 0; i < L; ++i) {
          root[big[i]] = big[(i + 1) % L];
        }
      }
    }
    Permutation rho(std::move(root));
    if (rho.power(d) != sigma) {
      throw InvariantError("dth_root: constructed root of " + sigma.to_string()
                           + " does not power back");
    }
    return rho;
  }

  unsigned cycles_of_power(CycleType const& type, unsigned b, unsigned t) {
    unsigned total = 0;
    for (auto [L, c] : type.counts) {
      unsigned const g = std::gcd(L, b);
      if (L / g == t) {
        total += c * g;
      }
    }
    return total;
  }

  namespace {
    void check_moment_args(unsigned b, unsigned t, unsigned N) {
      if (b == 0 || t == 0 || N == 0) {
        throw ArgumentError("moments: b, t and N must be positive");
      }
      if (t % b != 0) {
        throw HypothesisError("b-divides-t", std::to_string(b)
                                                 + " does not divide "
                                                 + std::to_string(t));
      }
      if (N < b * t) {
        throw HypothesisError("N-at-least-bt",
                              "N = " + std::to_string(N) + " < bt = "
                                  + std::to_string(b * t));
      }
    }

    CycleType type_of(std::span<std::uint32_t const> p) {
      CycleType         ct;
      ct.degree = static_cast<unsigned>(p.size());
      std::vector<bool> done(p.size(), false);
      for (std::uint32_t s = 0; s < p.size(); ++s) {
        unsigned len = 0;
        for (std::uint32_t x = s; !done[x]; x = p[x]) {
          done[x] = true;
          ++len;
        }
        if (len > 0) {
          ++ct.counts[len];
        }
      }
      return ct;
    }
  }  // namespace

  Moments moments_exact(unsigned b, unsigned t, unsigned N, bool force_second) {
    check_moment_args(b, t, N);
    if (N > 9) {
      throw BudgetExceeded("moments_exact: N = " + std::to_string(N)
                           + " exceeds the exhaustive cap of 9");
    }
    std::vector<std::uint32_t> p(N);
    std::iota(p.begin(), p.end(), 0u);
    std::uint64_t s1 = 0, s2 = 0;
    do {
      std::uint64_t c = cycles_of_power(type_of(p), b, t);
      s1 += c;
      s2 += c * c;
    } while (std::next_permutation(p.begin(), p.end()));
    long const count = static_cast<long>(factorial(N));
    Moments    out;
    out.first = make_rational(static_cast<long>(s1), count);
    if (force_second || N >= 2 * b * t) {
      out.second = make_rational(static_cast<long>(s2), count);
    }
    return out;
  }

  MomentEstimate moments_monte_carlo(unsigned      b,
                                     unsigned      t,
                                     unsigned      N,
                                     std::uint64_t samples,
                                     std::uint64_t seed,
                                     unsigned      workers) {
    check_moment_args(b, t, N);
    if (samples < 2) {
      throw ArgumentError("moments_monte_carlo: need at least 2 samples");
    }
    std::vector<long double> s1(monte_carlo_shards, 0), s2(monte_carlo_shards, 0),
        s4(monte_carlo_shards, 0);
    detail::run_shards(monte_carlo_shards, workers, [&](unsigned s) {
      std::uint64_t const todo = samples / monte_carlo_shards
                                 + (s < samples % monte_carlo_shards ? 1 : 0);
      Rng                        rng(seed, s);
      std::vector<std::uint32_t> p(N);
      for (std::uint64_t i = 0; i < todo; ++i) {
        std::iota(p.begin(), p.end(), 0u);
        rng.shuffle(std::span<std::uint32_t>(p));
        long double c = cycles_of_power(type_of(p), b, t);
        s1[s] += c;
        s2[s] += c * c;
        s4[s] += c * c * c * c;
      }
    });
    long double S1 = 0, S2 = 0, S4 = 0;
    for (unsigned s = 0; s < monte_carlo_shards; ++s) {
      S1 += s1[s];
      S2 += s2[s];
      S4 += s4[s];
    }
    long double const n  = static_cast<long double>(samples);
    long double const m1 = S1 / n, m2 = S2 / n;
    long double const v1 = std::max<long double>(0, (S2 - n * m1 * m1) / (n - 1));
    long double const v2 = std::max<long double>(0, (S4 - n * m2 * m2) / (n - 1));
    MomentEstimate    e;
    e.first        = static_cast<double>(m1);
    e.first_error  = static_cast<double>(std::sqrt(v1 / n));
    e.second       = static_cast<double>(m2);
    e.second_error = static_cast<double>(std::sqrt(v2 / n));
    e.samples      = samples;
    return e;
  }

  std::string ObstructionSearch::verdict() const {
    if (witness_found) {
      return "witness";
    }
    if (power_in_free) {
      return "no witness (w is a d-th power)";
    }
    return "no witness found (inconclusive)";
  }

  ObstructionSearch word_power_obstruction(Word const&               w,
                                           unsigned                  d,
                                           std::span<unsigned const> degrees,
                                           std::uint64_t             samples,
                                           std::uint64_t             seed,
                                           EnumerationOptions const& options) {
    if (d == 0) {
      throw ArgumentError("d must be positive");
    }
    ObstructionSearch out;
    out.d             = d;
    out.power_in_free = is_dth_power_in_free(w, d);
    detail::WordProgram const prog(std::span<Word const>(&w, 1));
    unsigned const            m    = prog.arity();
    auto const&               word = prog.words.front();
    out.generators                 = prog.generators;

    for (unsigned N : degrees) {
      if (N == 0) {
        throw ArgumentError("degrees must be positive");
      }
      std::vector<std::uint32_t> img(N);
      auto                       evaluate = [&](auto const& row) {
        for (std::uint32_t p = 0; p < N; ++p) {
          std::uint32_t x = p;
          for (auto [c, inv] : word) {
            x = row(c, inv)[x];
          }
          img[p] = x;
        }
        return !is_dth_power(type_of(img), d);
      };
      auto record = [&](auto const& image_of) {
        out.witness_found  = true;
        out.witness_degree = N;
        for (unsigned c = 0; c < m; ++c) {
          out.images.push_back(image_of(c));
        }
      };

      std::uint64_t const tuples
          = detail::saturating_power(N <= 20 ? factorial(N) : UINT64_MAX, m);
      bool exhaustive = N <= 10;
      if (exhaustive) {
        try {
          detail::check_budget(tuples, prog.total_length, options.work_budget,
                               "obstruction");
        } catch (BudgetExceeded const&) {
          exhaustive = false;
        }
      }
      if (exhaustive) {
        out.exhaustive_degrees.push_back(N);
        detail::SymmetricTables const tables(N);
        std::vector<std::uint32_t>    idx(m, 0);
        auto row = [&](unsigned c, bool inv) { return tables.row(idx[c], inv); };
        while (true) {
          if (evaluate(row)) {
            record([&](unsigned c) {
              auto const* r = tables.row(idx[c], false);
              return Permutation(std::vector<Permutation::point_type>(r, r + N));
            });
            return out;
          }
          bool     wrapped = true;
          unsigned j       = m;
          while (j > 0) {
            --j;
            if (++idx[j] < tables.count) {
              wrapped = false;
              break;
            }
            idx[j] = 0;
          }
          if (wrapped) {
            break;
          }
        }
      } else {
        out.sampled_degrees.push_back(N);
        Rng                                     rng(seed, N);
        std::vector<std::vector<std::uint32_t>> fwd(m, std::vector<std::uint32_t>(N));
        std::vector<std::vector<std::uint32_t>> bwd(m, std::vector<std::uint32_t>(N));
        auto row = [&](unsigned c, bool inv) {
          return inv ? bwd[c].data() : fwd[c].data();
        };
        for (std::uint64_t i = 0; i < samples; ++i) {
          for (unsigned c = 0; c < m; ++c) {
            std::iota(fwd[c].begin(), fwd[c].end(), 0u);
            rng.shuffle(std::span<std::uint32_t>(fwd[c]));
            for (std::uint32_t p = 0; p < N; ++p) {
              bwd[c][fwd[c][p]] = p;
            }
          }
          if (evaluate(row)) {
            record([&](unsigned c) {
              return Permutation(std::vector<Permutation::point_type>(
                  fwd[c].begin(), fwd[c].end()));
            });
            return out;
          }
        }
      }
    }
    return out;
  }

}  // namespace wordmaps
