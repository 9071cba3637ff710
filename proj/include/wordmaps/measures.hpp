#ifndef WORDMAPS_MEASURES_HPP_
#define WORDMAPS_MEASURES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordmaps/group_table.hpp"
#include "wordmaps/rational.hpp"
#include "wordmaps/word.hpp"

namespace wordmaps {

  // Work units are tuples times total word length.  Only the generators a
  // word actually uses are enumerated; the others integrate out.
  struct EnumerationOptions {
    std::uint64_t work_budget = 1'000'000'000ULL;
    unsigned      workers     = 1;
  };

  // How a tuple is scored.  `full` evaluates the whole permutation w(σ) and
  // counts its fixed points; `traced` follows the single point 0 and uses
  // Tr = N * Pr[w(σ)(0) = 0].  Both are exact and must agree.
  enum class Evaluation { traced, full };

  // Expected number of fixed points of w(σ_1, ..., σ_r), σ_i uniform in S_N.
  Rational trw_exact(Word const&               w,
                     unsigned                  N,
                     EnumerationOptions const& options = {},
                     Evaluation                how     = Evaluation::traced);

  // Expected number of points fixed by every generator image, over uniform
  // Hom(F_r, S_N).  The trivial subgroup (no generators, or only identities)
  // gives N.
  Rational phi_exact(std::span<Word const>     generators,
                     unsigned                  ambient_rank,
                     unsigned                  N,
                     EnumerationOptions const& options = {},
                     Evaluation                how     = Evaluation::traced);

  // Φ_{H,J}(N) with H given over a basis of J ≅ F_k.
  Rational phi_relative_exact(std::span<Word const>     generators_in_basis,
                              unsigned                  k,
                              unsigned                  N,
                              EnumerationOptions const& options = {});

  struct SymmetricGroup {
    unsigned degree;
  };

  // Distribution of w over conjugacy classes.  For S_N the classes are the
  // partitions of N in decreasing lexicographic order and labelled "[3,1]";
  // for table groups they follow FiniteGroupTable::classes().
  struct MeasureTable {
    std::string                group;
    std::vector<std::string>   class_labels;
    std::vector<std::uint64_t> class_sizes;
    std::vector<Rational>      probabilities;
  };

  // Before aggregating, groups of order <= 24 are checked element by element
  // for conjugation invariance (InvariantError on failure).
  MeasureTable word_measure_exact(Word const&               w,
                                  SymmetricGroup            G,
                                  EnumerationOptions const& options = {});
  MeasureTable word_measure_exact(Word const&               w,
                                  FiniteGroupTable const&   G,
                                  EnumerationOptions const& options = {});

  struct MeasureComparison {
    bool                       equal = true;
    std::optional<std::size_t> witness;  // class index
    std::string                witness_label;
    Rational                   first;
    Rational                   second;
  };

  // Witness policy: the first class in the support of exactly one measure,
  // else the first class where the probabilities differ.  Throws
  // ArgumentError if the tables describe different groups.
  MeasureComparison compare_measures(MeasureTable const& a, MeasureTable const& b);

  MeasureComparison compare_measures(Word const&               w1,
                                     Word const&               w2,
                                     SymmetricGroup            G,
                                     EnumerationOptions const& options = {});
  MeasureComparison compare_measures(Word const&               w1,
                                     Word const&               w2,
                                     FiniteGroupTable const&   G,
                                     EnumerationOptions const& options = {});

  // { φ(w) : φ ∈ Hom(F_r, G) surjective }, sorted.  Requires w.rank() <= r.
  std::vector<FiniteGroupTable::element_type>
  epi_image(Word const&               w,
            FiniteGroupTable const&   G,
            unsigned                  r,
            EnumerationOptions const& options = {});

  struct MonteCarloEstimate {
    double        estimate       = 0;
    double        standard_error = 0;
    std::uint64_t samples        = 0;
  };

  // Samples are split over a fixed plan of 64 shards, shard s drawing from
  // Rng(seed, s) and the sums merged exactly, so the result depends on the
  // seed only.  Each sample shuffles the identity once per used generator,
  // in increasing generator order.  Requires samples >= 2.
  MonteCarloEstimate trw_monte_carlo(Word const&   w,
                                     unsigned      N,
                                     std::uint64_t samples,
                                     std::uint64_t seed,
                                     unsigned      workers = 1);

  constexpr unsigned monte_carlo_shards = 64;

}  // namespace wordmaps

#endif  // WORDMAPS_MEASURES_HPP_
