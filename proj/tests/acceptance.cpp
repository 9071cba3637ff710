// Acceptance suite: one PASS/FAIL line per criterion.  Run with a criterion
// number to check just that one.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "wordmaps/error.hpp"
#include "wordmaps/extensions.hpp"
#include "wordmaps/measures.hpp"
#include "wordmaps/mobius.hpp"
#include "wordmaps/perm_powers.hpp"

using namespace wordmaps;
using oracle::xyz;

namespace {
  unsigned workers() {
    return std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  }

  EnumerationOptions enumeration() {
    return {1'000'000'000ULL, workers()};
  }

  MobiusOptions mobius_options() {
    MobiusOptions o;
    o.enumeration = enumeration();
    return o;
  }

  // Prints a mismatch and returns false so callers can fold results.
  bool expect(bool ok, std::string const& what) {
    if (!ok) {
      std::cout << "  mismatch: " << what << "\n";
    }
    return ok;
  }

  CoreGraph sub(std::initializer_list<char const*> gens) {
    std::vector<Word> ws;
    for (auto g : gens) {
      ws.push_back(xyz(g));
    }
    return CoreGraph::from_generators(ws, 2);
  }

  bool criterion_1() {
    bool ok = true;
    for (unsigned N = 3; N <= 6; ++N) {
      Rational got = trw_exact(xyz("x^3 y^2"), N, enumeration());
      Rational want = 1 + make_rational(1, N - 1);
      std::cout << "  N=" << N << " Tr=" << to_string(got) << "\n";
      ok &= expect(got == want, "N=" + std::to_string(N) + " want " + to_string(want));
    }
    return ok;
  }

  bool criterion_2() {
    bool ok = true;
    for (char const* w : {"x", "xy", "yX"}) {
      for (unsigned N = 1; N <= 6; ++N) {
        Rational got = trw_exact(xyz(w), N, enumeration());
        ok &= expect(got == 1, std::string(w) + " N=" + std::to_string(N) + " Tr="
                                   + to_string(got));
      }
    }
    return ok;
  }

  bool criterion_3() {
    struct Block {
      unsigned b, t, lo, hi;
    };
    bool ok = true;
    for (auto blk : {Block{1, 1, 2, 9}, Block{1, 2, 4, 9}, Block{2, 2, 8, 9},
                     Block{1, 3, 6, 9}, Block{3, 3, 9, 9}}) {
      for (unsigned N = blk.lo; N <= blk.hi; ++N) {
        Rational want1 = make_rational(1, blk.t);
        Rational want2 = make_rational(blk.b * blk.t + 1, blk.t * blk.t);
        auto m = moments_exact(blk.b, blk.t, N, true);
        std::cout << "  (b,t,N)=(" << blk.b << "," << blk.t << "," << N << ") E="
                  << to_string(m.first) << " E2=" << to_string(*m.second) << "\n";
        std::string tag = "(" + std::to_string(blk.b) + "," + std::to_string(blk.t) + ","
                          + std::to_string(N) + ")";
        ok &= expect(m.first == want1, tag + " first moment, want " + to_string(want1));
        ok &= expect(*m.second == want2, tag + " second moment " + to_string(*m.second)
                                             + ", want " + to_string(want2)
                                             + (N < 2 * blk.b * blk.t ? " (N < 2bt)" : ""));
      }
    }
    return ok;
  }

  bool criterion_4() {
    bool ok = true;
    std::size_t roots = 0;
    for (unsigned N = 1; N <= 7; ++N) {
      auto all = all_permutations(N);
      for (unsigned d = 2; d <= 6; ++d) {
        auto powers = oracle::dth_powers(N, d);
        for (auto const& s : all) {
          bool want = powers.count(s) > 0;
          if (is_dth_power(s, d) != want) {
            ok = expect(false, s.to_string() + " d=" + std::to_string(d));
          }
          auto r = dth_root(s, d);
          if (r.has_value() != want || (r && oracle::repeated_power(*r, d) != s)) {
            ok = expect(false, "root of " + s.to_string() + " d=" + std::to_string(d));
          }
          roots += r ? 1 : 0;
        }
      }
    }
    std::cout << "  roots verified: " << roots << "\n";
    return ok;
  }

  bool criterion_5() {
    bool ok = true;
    std::vector<std::pair<std::string, CoreGraph>> corpus{
        {"<x>", sub({"x"})},         {"<x^2>", sub({"xx"})},
        {"<x^3>", sub({"x^3"})},     {"<[x,y]>", sub({"[x,y]"})},
        {"<x^2, xy>", sub({"xx", "xy"})}};
    for (auto const& [name, H] : corpus) {
      for (unsigned N = 3; N <= 5; ++N) {
        Rational a = phi_via_expansion(H, 2, N, mobius_options());
        Rational b = phi_exact(H.basis(), 2, N, enumeration());
        std::cout << "  " << name << " N=" << N << " expansion=" << to_string(a)
                  << " direct=" << to_string(b) << "\n";
        ok &= expect(a == b, name + " N=" + std::to_string(N));
      }
    }
    return ok;
  }

  bool criterion_6() {
    std::vector<unsigned> Ns{4, 5, 6, 7};
    auto fit = fit_expansion(xyz("[x,y]"), Ns, enumeration());
    bool ok  = expect(fit.pi == 2u, "pi estimate");
    std::cout << "  pi=" << (fit.pi ? std::to_string(*fit.pi) : "inf") << " C=" << fit.C
              << " C_mean=" << fit.C_mean << "\n";
    ok &= expect(std::abs(fit.C - 1.0) <= 0.2, "C estimate " + std::to_string(fit.C));
    auto H = sub({"[x,y]"});
    auto P = algebraic_extensions(H);
    std::set<std::string> keys, want{H.canonical_key(), CoreGraph::rose(2).canonical_key()};
    for (auto i : P.algebraic_indices()) {
      keys.insert(P.nodes[i].canonical_key());
    }
    ok &= expect(keys == want, "algebraic extensions of <[x,y]>");
    auto p = pi(H);
    ok &= expect(p.value == 2u && p.count == 1, "pi(<[x,y]>) = " + p.to_string());
    return ok;
  }

  bool criterion_7() {
    std::vector<unsigned> Ns{5, 6, 7};
    std::vector<Word> images{xyz("xx"), xyz("y")};
    auto r = check_theorem_1_4(xyz("[x,y]"), images, Ns, mobius_options());
    bool ok = true;
    for (auto const& row : r.rows) {
      std::cout << "  N=" << row.N << " " << to_string(row.lhs) << " < " << to_string(row.rhs)
                << " scaled gap " << row.scaled_gap << "\n";
      ok &= expect(row.strict, "not strict at N=" + std::to_string(row.N));
    }
    for (int n = 1; n <= 4; ++n) {
      std::vector<Word> im{power(xyz("x"), n), xyz("y")};
      std::string named;
      try {
        check_theorem_1_4(xyz("xy"), im, Ns, mobius_options());
      } catch (HypothesisError const& e) {
        named = e.hypothesis();
        if (n == 2) {
          std::cout << "  rejected: " << e.what() << "\n";
        }
      }
      ok &= expect(named == "word-algebraic-in-F_k",
                   "xy with a^" + std::to_string(n) + " not rejected");
    }
    return ok;
  }

  bool criterion_8() {
    bool ok = true;
    for (unsigned d = 2; d <= 4; ++d) {
      std::vector<unsigned> Ns;
      for (unsigned N = d; N <= 7; ++N) {
        Ns.push_back(N);
      }
      auto r = check_power_gap(xyz("x", 1), d, Ns, mobius_options());
      for (auto const& row : r.rows) {
        std::cout << "  d=" << d << " N=" << row.N << " f=" << to_string(row.gap) << "\n";
        ok &= expect(row.deviation == 0, "d=" + std::to_string(d) + " N="
                                             + std::to_string(row.N));
      }
    }
    return ok;
  }

  bool criterion_9() {
    bool ok = true;
    for (unsigned N = 2; N <= 5; ++N) {
      auto c = compare_measures(xyz("[x,y]"), xyz("xyxY"), SymmetricGroup{N}, enumeration());
      ok &= expect(c.equal, "[x,y] vs xyxY on S" + std::to_string(N));
    }
    auto c = compare_measures(xyz("x"), xyz("xx"), SymmetricGroup{3}, enumeration());
    std::cout << "  x vs x^2 on S3: " << (c.equal ? "equal" : "unequal") << " witness "
              << c.witness_label << " " << to_string(c.first) << " vs " << to_string(c.second)
              << "\n";
    ok &= expect(!c.equal && c.witness_label == "[2,1]", "x vs x^2 witness");
    return ok;
  }

  // --- criterion 10 -----------------------------------------------------

  bool fold_confluence() {
    std::mt19937_64 rng(1001);
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
      PreGraph p;
      p.ambient_rank = 2;
      p.num_vertices = 1 + static_cast<unsigned>(rng() % 7);
      for (unsigned e = 0, n = static_cast<unsigned>(rng() % 12); e < n; ++e) {
        p.edges.push_back({static_cast<unsigned>(rng() % p.num_vertices),
                           1 + static_cast<unsigned>(rng() % 2),
                           static_cast<unsigned>(rng() % p.num_vertices)});
      }
      std::set<std::string> keys;
      for (std::uint64_t s = 0; s < 10; ++s) {
        keys.insert(fold(p, rng()).canonical_key());
      }
      ok &= expect(keys.size() == 1, "fold order changed the key of pre-graph " + std::to_string(i));
    }
    std::cout << "  fold confluence: " << (ok ? "ok" : "broken") << "\n";
    return ok;
  }

  bool aut_invariance() {
    std::mt19937_64 rng(1002);
    auto moves = enumerate_whitehead_moves(2);
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
      Word w = oracle::random_word(rng, 2, 8);
      auto const& m = moves[rng() % moves.size()];
      Word v = m.apply(w);
      for (unsigned N = 1; N <= 5; ++N) {
        ok &= expect(trw_exact(w, N, enumeration()) == trw_exact(v, N, enumeration()),
                     w.to_string() + " under " + m.to_string() + " at N=" + std::to_string(N));
      }
    }
    std::cout << "  Aut-invariance: " << (ok ? "ok" : "broken") << "\n";
    return ok;
  }

  int run_cli(std::string const& args) {
    std::string cmd = std::string(WORDMAPS_CLI) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(std::filesystem::path const& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  bool parallel_determinism() {
    auto dir = std::filesystem::temp_directory_path() / "wordmaps_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<std::string> jobs{
        "measure trw --word \"[x,y]\" --n 3..6 --exact",
        "measure trw --word \"x^3 y^2\" --n 20..21 --mc --samples 50000 --seed 5",
        "measure phi --gen xx --gen xy --n 3..5 --exact",
        "mobius derive --gen \"[x,y]\" --n 4..5",
        "perm moments --b 1 --t 2 --n 4..6",
    };
    bool ok = true;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      auto a = dir / ("w1_" + std::to_string(j) + ".csv");
      auto b = dir / ("w4_" + std::to_string(j) + ".csv");
      int ca = run_cli("--workers 1 -o " + a.string() + " " + jobs[j]);
      int cb = run_cli("--workers 4 -o " + b.string() + " " + jobs[j]);
      bool same = ca == 0 && cb == 0 && !slurp(a).empty() && slurp(a) == slurp(b);
      ok &= expect(same, "workers 1 vs 4: " + jobs[j]);
    }
    std::cout << "  parallel determinism: " << (ok ? "ok" : "broken") << "\n";
    return ok;
  }

  bool monte_carlo_consistency() {
    struct Case {
      char const* word;
      unsigned    N;
    };
    bool ok = true;
    for (auto c : {Case{"x", 6}, Case{"xx", 6}, Case{"x^3 y^2", 6}, Case{"[x,y]", 6},
                   Case{"xxyy", 5}}) {
      Word w = xyz(c.word);
      double exact = trw_exact(w, c.N, enumeration()).get_d();
      int strikes = 0;
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto e = trw_monte_carlo(w, c.N, 200000, seed, workers());
        if (std::abs(e.estimate - exact) < 5 * std::max(e.standard_error, 1e-12)) {
          break;
        }
        ++strikes;
      }
      ok &= expect(strikes < 3, std::string(c.word) + " at N=" + std::to_string(c.N));
    }
    std::cout << "  Monte Carlo consistency: " << (ok ? "ok" : "broken") << "\n";
    return ok;
  }

  bool criterion_10() {
    bool ok = fold_confluence();
    ok &= aut_invariance();
    ok &= parallel_determinism();
    ok &= monte_carlo_consistency();
    return ok;
  }
}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<bool()>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  std::vector<std::size_t> which;
  for (int i = 1; i < argc; ++i) {
    std::size_t k = std::strtoul(argv[i], nullptr, 10);
    if (k < 1 || k > criteria.size()) {
      std::cerr << "unknown criterion " << argv[i] << "\n";
      return 2;
    }
    which.push_back(k);
  }
  if (which.empty()) {
    for (std::size_t k = 1; k <= criteria.size(); ++k) {
      which.push_back(k);
    }
  }
  int failed = 0;
  for (auto k : which) {
    bool ok = false;
    try {
      ok = criteria[k - 1]();
    } catch (std::exception const& e) {
      std::cout << "  error: " << e.what() << "\n";
    }
    std::cout << "criterion " << k << ": " << (ok ? "PASS" : "FAIL") << std::endl;
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
