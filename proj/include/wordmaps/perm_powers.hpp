#ifndef WORDMAPS_PERM_POWERS_HPP_
#define WORDMAPS_PERM_POWERS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordmaps/measures.hpp"
#include "wordmaps/permutation.hpp"
#include "wordmaps/rational.hpp"
#include "wordmaps/word.hpp"

namespace wordmaps {

  bool is_prime(unsigned long long n);

  // p-adic valuation of n.  Throws ArgumentError unless n >= 1 and p prime.
  unsigned nu_p(unsigned long long n, unsigned long long p);

  // m_t = product over primes p | t of p^{ν_p(d)}.
  unsigned long long power_block(unsigned long long t, unsigned long long d);

  // σ is a d-th power iff m_t divides c_t(σ) for every t.
  bool is_dth_power(Permutation const& sigma, unsigned d);
  bool is_dth_power(CycleType const& type, unsigned d);

  // Groups the t-cycles of σ, by smallest point, into runs of m_t and
  // interleaves each run into one (t * m_t)-cycle.  The result is checked
  // against σ before returning (InvariantError on mismatch).
  std::optional<Permutation> dth_root(Permutation const& sigma, unsigned d);

  // Number of t-cycles of σ^b given the cycle type of σ.
  unsigned cycles_of_power(CycleType const& type, unsigned b, unsigned t);

  struct Moments {
    Rational                first;
    std::optional<Rational> second;  // only when N >= 2bt, unless forced
  };

  // E[c_t(σ^b)] and E[c_t(σ^b)^2] over all of S_N.  Requires b | t and
  // N >= bt (HypothesisError "b-divides-t" / "N-at-least-bt"), N <= 9
  // (BudgetExceeded).  The second moment is computed only when N >= 2bt
  // unless force_second is set.
  Moments moments_exact(unsigned b,
                        unsigned t,
                        unsigned N,
                        bool     force_second = false);

  struct MomentEstimate {
    double        first = 0, first_error = 0;
    double        second = 0, second_error = 0;
    std::uint64_t samples = 0;
  };

  // Seeded estimate over the same fixed shard plan as trw_monte_carlo.
  MomentEstimate moments_monte_carlo(unsigned      b,
                                     unsigned      t,
                                     unsigned      N,
                                     std::uint64_t samples,
                                     std::uint64_t seed,
                                     unsigned      workers = 1);

  struct ObstructionSearch {
    unsigned                 d = 1;
    bool                     power_in_free = false;  // exact free-group answer
    bool                     witness_found = false;
    unsigned                 witness_degree = 0;
    std::vector<unsigned>    generators;  // x_i carrying the witness images
    std::vector<Permutation> images;
    std::vector<unsigned>    exhaustive_degrees;
    std::vector<unsigned>    sampled_degrees;

    // "witness", "no witness (w is a d-th power)" or "no witness found
    // (inconclusive)".
    std::string verdict() const;
  };

  // Looks for φ with φ(w) not a d-th power in S_N, N in `degrees` (in the
  // given order).  A degree is searched exhaustively when (N!)^m times |w|
  // fits the budget, otherwise by `samples` seeded random tuples.
  ObstructionSearch word_power_obstruction(Word const&               w,
                                           unsigned                  d,
                                           std::span<unsigned const> degrees,
                                           std::uint64_t             samples,
                                           std::uint64_t             seed,
                                           EnumerationOptions const& options = {});

}  // namespace wordmaps

#endif  // WORDMAPS_PERM_POWERS_HPP_
