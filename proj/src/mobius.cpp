#include "wordmaps/mobius.hpp"

#include <algorithm>
#include <cmath>

#include "wordmaps/error.hpp"

namespace wordmaps {

  Rational expected_base_term(unsigned N, unsigned k) {
    mpz_class p = 1;
    for (unsigned i = 1; i < std::max(k, 1u); ++i) {
      p *= N;
    }
    if (k == 0) {
      return Rational(N);
    }
    Rational q(mpz_class(1), p);
    q.canonicalize();
    return q;
  }

  DerivationTable derive_R(ExtensionPoset const&     poset,
                           unsigned                  N,
                           EnumerationOptions const& options) {
    DerivationTable table{poset, N, {}, {}, {}};
    std::size_t const n = poset.nodes.size();
    table.phi.assign(n, Rational(0));
    table.values.assign(n, Rational(0));

    // Algebraic nodes ordered by how many algebraic nodes lie below them.
    auto alg = poset.algebraic_indices();
    std::vector<std::pair<std::size_t, std::size_t>> depth;
    for (auto j : alg) {
      std::size_t below = 0;
      for (auto m : alg) {
        below += (m != j && poset.leq[m][j]) ? 1 : 0;
      }
      depth.emplace_back(below, j);
    }
    std::sort(depth.begin(), depth.end());
    for (auto [below, j] : depth) {
      table.order.push_back(j);
    }

    for (auto j : table.order) {
      CoreGraph const& J     = poset.nodes[j];
      auto const       local = relative_subgroup(poset.base, J).basis();
      table.phi[j] = phi_relative_exact(local, std::max(1u, J.rank()), N, options);
      Rational r = table.phi[j];
      for (auto m : table.order) {
        if (m == j) {
          break;
        }
        if (poset.leq[m][j]) {
          r -= table.values[m];
        }
      }
      table.values[j] = r;
    }
    Rational const expected = expected_base_term(N, poset.base.rank());
    if (table.values[poset.base_index] != expected) {
      throw InvariantError("derive_R: R_{H,H} = "
                           + to_string(table.values[poset.base_index])
                           + ", expected " + to_string(expected));
    }
    return table;
  }

  DerivationTable derive_R(CoreGraph const&     H,
                           unsigned             N,
                           MobiusOptions const& options) {
    return derive_R(algebraic_extensions(H, options.extensions), N,
                    options.enumeration);
  }

  Rational phi_via_expansion(CoreGraph const&     H,
                             unsigned             r,
                             unsigned             N,
                             MobiusOptions const& options) {
    if (r < H.ambient_rank()) {
      throw ArgumentError("phi_via_expansion: ambient rank "
                          + std::to_string(r) + " is smaller than that of H");
    }
    auto const table = derive_R(H, N, options);
    Rational   sum   = 0;
    for (auto j : table.order) {
      sum += table.values[j];
    }
    return sum;
  }

  ExpansionFit fit_expansion(Word const&               w,
                             std::span<unsigned const> degrees,
                             EnumerationOptions const& options) {
    if (degrees.size() < 3) {
      throw ArgumentError("fit_expansion: need at least three values of N");
    }
    for (std::size_t i = 1; i < degrees.size(); ++i) {
      if (degrees[i] <= degrees[i - 1]) {
        throw ArgumentError("fit_expansion: degrees must be ascending");
      }
    }
    ExpansionFit fit;
    fit.degrees.assign(degrees.begin(), degrees.end());
    std::vector<double> g;
    int                 sign = 0;
    for (auto N : degrees) {
      fit.traces.push_back(trw_exact(w, N, options));
      Rational const e = fit.traces.back() - 1;
      g.push_back(e.get_d());
      int const s = sgn(e);
      if (s != 0) {
        if (sign != 0 && s != sign) {
          throw ArgumentError("fit_expansion: Tr - 1 changes sign, degenerate fit");
        }
        sign = s;
      }
    }
    if (sign == 0) {
      return fit;
    }
    if (std::any_of(g.begin(), g.end(), [](double x) { return x == 0; })) {
      throw ArgumentError("fit_expansion: Tr - 1 vanishes at some N, degenerate fit");
    }
    std::size_t const k     = degrees.size() - 1;
    double const      n1    = degrees[k - 1];
    double const      n2    = degrees[k];
    double const      slope = std::log(g[k] / g[k - 1]) / std::log(n2 / n1);
    long const        est   = std::lround(1.0 - slope);
    if (est < 1) {
      throw ArgumentError("fit_expansion: growth exponent out of range, degenerate fit");
    }
    fit.pi = static_cast<unsigned>(est);
    std::vector<double> a;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      a.push_back(g[i] * std::pow(static_cast<double>(degrees[i]), est - 1.0));
    }
    fit.C = (n2 * a[k] - n1 * a[k - 1]) / (n2 - n1);
    double total = 0;
    for (auto x : a) {
      total += x;
    }
    fit.C_mean = total / static_cast<double>(a.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      fit.residuals.push_back(
          g[i] - fit.C * std::pow(static_cast<double>(degrees[i]), 1.0 - est));
    }
    return fit;
  }

  bool InequalityReport::all_strict() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](InequalityRow const& r) { return r.strict; });
  }

  InequalityReport check_theorem_1_4(Word const&               w,
                                     std::span<Word const>     images,
                                     std::span<unsigned const> degrees,
                                     MobiusOptions const&      options) {
    unsigned const k = static_cast<unsigned>(images.size());
    if (k == 0) {
      throw ArgumentError("check_theorem_1_4: no images given");
    }
    if (w.max_generator() > k) {
      throw ArgumentError("check_theorem_1_4: word " + w.to_string()
                          + " needs more than " + std::to_string(k) + " images");
    }
    InequalityReport report;
    report.w = w.with_rank(k);
    report.images.assign(images.begin(), images.end());

    report.hypotheses.push_back("word-algebraic-in-F_k");
    CoreGraph const H = CoreGraph::from_generators({report.w}, k);
    if (report.w.is_identity()
        || ff_closure(H, CoreGraph::rose(k), options.extensions)
               != CoreGraph::rose(k)) {
      throw HypothesisError("word-algebraic-in-F_k",
                            "<" + w.to_string()
                                + "> lies in a proper free factor of F_"
                                + std::to_string(k));
    }
    report.hypotheses.push_back("images-free");
    validate_free_images(images);
    report.hypotheses.push_back("images-not-free-factor");
    if (is_free_factor_of_ambient(
            CoreGraph::from_generators(images, images.front().rank()),
            options.extensions)) {
      throw HypothesisError("images-not-free-factor",
                            "the images generate a free factor");
    }

    report.image_word = substitute(report.w, images);
    report.pi_iota    = pi_iota(H, images, options.extensions);
    for (auto N : degrees) {
      InequalityRow row;
      row.N      = N;
      row.lhs    = trw_exact(report.w, N, options.enumeration);
      row.rhs    = trw_exact(report.image_word, N, options.enumeration);
      row.strict = row.lhs < row.rhs;
      if (report.pi_iota.value) {
        Rational gap = row.rhs - row.lhs;
        for (unsigned i = 1; i < *report.pi_iota.value; ++i) {
          gap *= N;
        }
        row.scaled_gap = gap.get_d();
      }
      report.rows.push_back(std::move(row));
    }
    return report;
  }

  unsigned divisor_count(unsigned d) {
    unsigned c = 0;
    for (unsigned i = 1; i <= d; ++i) {
      c += d % i == 0 ? 1 : 0;
    }
    return c;
  }

  PowerGapReport check_power_gap(Word const&               u,
                                 unsigned                  d,
                                 std::span<unsigned const> degrees,
                                 MobiusOptions const&      options) {
    if (d == 0) {
      throw ArgumentError("check_power_gap: d must be positive");
    }
    if (u.is_identity() || maximal_root(u).exponent != 1) {
      throw HypothesisError("u-not-a-power",
                            u.to_string() + " is trivial or a proper power");
    }
    PowerGapReport report;
    report.u        = u;
    report.d        = d;
    report.divisors = divisor_count(d);
    report.pi       = pi_of_word(compact(u), options.extensions);
    Word const ud   = power(u, d);
    Rational const expected(report.divisors - 1);
    for (auto N : degrees) {
      PowerGapRow row;
      row.N           = N;
      row.power_trace = trw_exact(ud, N, options.enumeration);
      row.base_trace  = trw_exact(u, N, options.enumeration);
      row.gap         = row.power_trace - row.base_trace;
      row.deviation   = row.gap - expected;
      report.rows.push_back(std::move(row));
    }
    return report;
  }

}  // namespace wordmaps
