#ifndef WORDMAPS_MOBIUS_HPP_
#define WORDMAPS_MOBIUS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordmaps/core_graph.hpp"
#include "wordmaps/extensions.hpp"
#include "wordmaps/measures.hpp"
#include "wordmaps/rational.hpp"
#include "wordmaps/word.hpp"

namespace wordmaps {

  struct MobiusOptions {
    ExtensionOptions   extensions;
    EnumerationOptions enumeration;
  };

  // N^{1-k} as an exact rational.
  Rational expected_base_term(unsigned N, unsigned k);

  // R_{H,J}(N) and Φ_{H,J}(N) for every algebraic extension J of H.
  struct DerivationTable {
    ExtensionPoset           poset;
    unsigned                 N = 0;
    std::vector<std::size_t> order;  // algebraic node indices, bottom-up
    std::vector<Rational>    phi;    // indexed like poset.nodes
    std::vector<Rational>    values; // R, indexed like poset.nodes

    Rational const& R(std::size_t node) const {
      return values.at(node);
    }
  };

  // Bottom-up over the algebraic nodes: R_{H,J} = Φ_{H,J} minus the R of
  // the algebraic nodes strictly below J.  Φ_{H,J} is evaluated with H
  // rewritten over the basis of J.  Checks R_{H,H} = N^{1-rank H}
  // (InvariantError otherwise).
  DerivationTable derive_R(ExtensionPoset const&     poset,
                           unsigned                  N,
                           EnumerationOptions const& options = {});
  DerivationTable derive_R(CoreGraph const&     H,
                           unsigned             N,
                           MobiusOptions const& options = {});

  // Φ_{H,F_r}(N) as the sum of R_{H,J}(N) over all algebraic extensions J.
  // Requires r >= H.ambient_rank().
  Rational phi_via_expansion(CoreGraph const&     H,
                             unsigned             r,
                             unsigned             N,
                             MobiusOptions const& options = {});

  struct ExpansionFit {
    std::vector<unsigned>   degrees;
    std::vector<Rational>   traces;
    std::optional<unsigned> pi;         // nullopt: Tr - 1 vanishes identically
    double                  C      = 0; // extrapolated from the last two N
    double                  C_mean = 0; // plain mean of (Tr - 1) N^{π-1}
    std::vector<double>     residuals;  // Tr - 1 - C N^{1-π}
  };

  // π from the last consecutive pair: round(1 - log ratio of (Tr - 1) over
  // log ratio of N).  With a_N = (Tr - 1) N^{π-1} = C + D/N + ..., C is the
  // first-order Richardson value (N2 a2 - N1 a1) / (N2 - N1).  Needs at least
  // three ascending degrees; throws ArgumentError on a sign change of Tr - 1.
  ExpansionFit fit_expansion(Word const&                w,
                             std::span<unsigned const>  degrees,
                             EnumerationOptions const&  options = {});

  struct InequalityRow {
    unsigned N = 0;
    Rational lhs;          // Tr_w(N)
    Rational rhs;          // Tr_{w(u_1..u_k)}(N)
    bool     strict = false;
    double   scaled_gap = 0;  // (rhs - lhs) N^{π_ι - 1}, when π_ι is finite
  };

  struct InequalityReport {
    Word                       w;
    std::vector<Word>          images;
    Word                       image_word;
    RankInvariant              pi_iota;
    std::vector<std::string>   hypotheses;  // names checked, in order
    std::vector<InequalityRow> rows;

    bool all_strict() const;
  };

  // Hypotheses, checked in this order and reported by name through
  // HypothesisError: "word-algebraic-in-F_k" (<w> is not contained in a
  // proper free factor of F_k, k = images.size()), "images-free",
  // "images-not-free-factor".
  InequalityReport check_theorem_1_4(Word const&               w,
                                     std::span<Word const>     images,
                                     std::span<unsigned const> degrees,
                                     MobiusOptions const&      options = {});

  struct PowerGapRow {
    unsigned N = 0;
    Rational power_trace;  // Tr_{u^d}(N)
    Rational base_trace;   // Tr_u(N)
    Rational gap;          // f_u(N)
    Rational deviation;    // f_u(N) - (δ(d) - 1)
  };

  struct PowerGapReport {
    Word                     u;
    unsigned                 d        = 1;
    unsigned                 divisors = 1;  // δ(d)
    RankInvariant            pi;
    std::vector<PowerGapRow> rows;
  };

  unsigned divisor_count(unsigned d);

  // Throws HypothesisError("u-not-a-power") when u is trivial or a proper
  // power.
  PowerGapReport check_power_gap(Word const&               u,
                                 unsigned                  d,
                                 std::span<unsigned const> degrees,
                                 MobiusOptions const&      options = {});

}  // namespace wordmaps

#endif  // WORDMAPS_MOBIUS_HPP_
