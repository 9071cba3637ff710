#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wordmaps/error.hpp"
#include "wordmaps/mobius.hpp"

using namespace wordmaps;
using oracle::xyz;

namespace {
  CoreGraph sub(std::initializer_list<char const*> gens) {
    std::vector<Word> ws;
    for (auto g : gens) {
      ws.push_back(xyz(g));
    }
    return CoreGraph::from_generators(ws, 2);
  }

  std::vector<CoreGraph> corpus() {
    return {sub({"x"}), sub({"xx"}), sub({"x^3"}), sub({"[x,y]"}), sub({"xx", "xy"})};
  }

  MobiusOptions parallel() {
    MobiusOptions o;
    o.enumeration.workers = 8;
    return o;
  }

  std::string hypothesis_of(auto&& f) {
    try {
      f();
    } catch (HypothesisError const& e) {
      return e.hypothesis();
    }
    return "";
  }
}  // namespace

TEST_CASE("derive_R examples") {
  for (unsigned N = 1; N <= 6; ++N) {
    auto t = derive_R(sub({"x"}), N);
    CHECK(t.order.size() == 1);
    CHECK(t.R(t.poset.base_index) == 1);
  }
  auto t = derive_R(sub({"xx"}), 4);
  auto top = t.poset.index_of(sub({"x"}));
  REQUIRE(top);
  CHECK(t.R(t.poset.base_index) == 1);
  CHECK(t.phi[*top] == 2);
  CHECK(t.R(*top) == 1);
  CHECK(expected_base_term(5, 0) == 5);
  CHECK(expected_base_term(5, 3) == make_rational(1, 25));
}

TEST_CASE("phi_via_expansion examples") {
  CHECK(phi_via_expansion(sub({"xx"}), 2, 5) == 2);
  std::vector<Word> sq{xyz("xx")};
  CHECK(phi_via_expansion(sub({"xx"}), 2, 5) == phi_exact(sq, 2, 5));
  for (unsigned N = 1; N <= 6; ++N) {
    CHECK(phi_via_expansion(sub({"x"}), 2, N) == 1);
  }
  CHECK(phi_via_expansion(sub({"[x,y]"}), 2, 5) == trw_exact(xyz("[x,y]"), 5));
  CHECK_THROWS_AS(phi_via_expansion(sub({"x"}), 1, 3), ArgumentError);
}

TEST_CASE("property: reconstruction identity at every node") {
  for (auto const& H : corpus()) {
    for (unsigned N = 3; N <= 5; ++N) {
      auto t = derive_R(H, N, parallel());
      auto const& P = t.poset;
      CHECK(t.R(P.base_index) == expected_base_term(N, H.rank()));
      for (auto j : t.order) {
        Rational sum = 0;
        for (auto m : t.order) {
          if (P.leq[m][j]) {
            sum += t.R(m);
          }
        }
        CHECK(sum == t.phi[j]);
      }
      // Φ at the top node directly, without the relative rewriting.
      if (P.algebraic[P.top_index] && P.nodes[P.top_index] == CoreGraph::rose(2)) {
        CHECK(t.phi[P.top_index] == phi_exact(H.basis(), 2, N));
      }
    }
  }
}

TEST_CASE("property: expansion equals direct enumeration") {
  for (auto const& H : corpus()) {
    for (unsigned N = 3; N <= 5; ++N) {
      CHECK(phi_via_expansion(H, 2, N, parallel()) == phi_exact(H.basis(), 2, N));
    }
  }
}

TEST_CASE("property: leading term of R at proper algebraic extensions") {
  for (auto const& H : corpus()) {
    for (unsigned N = 5; N <= 7; ++N) {
      auto t = derive_R(H, N, parallel());
      for (auto j : t.poset.proper_algebraic_indices()) {
        Rational scaled = t.R(j);
        for (unsigned i = 1; i < t.poset.nodes[j].rank(); ++i) {
          scaled *= N;
        }
        CAPTURE(N);
        CHECK(std::abs(scaled.get_d() - 1.0) <= 3.0 / N);
      }
    }
  }
}

TEST_CASE("fit_expansion examples") {
  std::vector<unsigned> small{3, 4, 5, 6};
  auto f = fit_expansion(xyz("x"), small);
  CHECK_FALSE(f.pi.has_value());

  std::vector<unsigned> mid{3, 4, 5, 6, 7};
  f = fit_expansion(xyz("xx", 1), mid);
  REQUIRE(f.pi.has_value());
  CHECK(*f.pi == 1);
  CHECK(f.C == doctest::Approx(1.0));
  CHECK(f.C_mean == doctest::Approx(1.0));

  std::vector<unsigned> big{4, 5, 6, 7};
  f = fit_expansion(xyz("[x,y]"), big, {1'000'000'000ULL, 8});
  REQUIRE(f.pi.has_value());
  CHECK(*f.pi == 2);
  CHECK(std::abs(f.C - 1.0) <= 0.2);
  CHECK(f.traces.back() == make_rational(7, 6));

  std::vector<unsigned> two{3, 4};
  CHECK_THROWS_AS(fit_expansion(xyz("xx"), two), ArgumentError);
  std::vector<unsigned> down{5, 4, 3};
  CHECK_THROWS_AS(fit_expansion(xyz("xx"), down), ArgumentError);
}

TEST_CASE("check_theorem_1_4 examples") {
  std::vector<unsigned> Ns{5, 6, 7};
  std::vector<Word> ab{xyz("xx"), xyz("y")};
  auto r = check_theorem_1_4(xyz("[x,y]"), ab, Ns, parallel());
  CHECK(r.all_strict());
  CHECK(r.rows.size() == 3);
  CHECK(r.pi_iota.value == 2u);
  CHECK(r.image_word == xyz("xxyXXY"));
  CHECK(r.hypotheses == std::vector<std::string>{"word-algebraic-in-F_k", "images-free",
                                                 "images-not-free-factor"});

  std::vector<unsigned> all{2, 3, 4, 5, 6, 7};
  std::vector<Word> sq{xyz("xx", 1)};
  r = check_theorem_1_4(xyz("x", 1), sq, all);
  CHECK(r.all_strict());
  for (auto const& row : r.rows) {
    CHECK(row.lhs == 1);
    CHECK(row.rhs == 2);
  }

  for (int n = 1; n <= 3; ++n) {
    std::vector<Word> im{power(xyz("x"), n), xyz("y")};
    CHECK(hypothesis_of([&] { check_theorem_1_4(xyz("xy"), im, Ns); })
          == "word-algebraic-in-F_k");
  }
  std::vector<Word> same{xyz("x"), xyz("x")};
  CHECK(hypothesis_of([&] { check_theorem_1_4(xyz("[x,y]"), same, Ns); }) == "images-free");
  std::vector<Word> basis{xyz("x"), xyz("xy")};
  CHECK(hypothesis_of([&] { check_theorem_1_4(xyz("[x,y]"), basis, Ns); })
        == "images-not-free-factor");
}

TEST_CASE("check_power_gap examples") {
  std::vector<unsigned> Ns{3, 4, 5, 6, 7};
  auto r = check_power_gap(xyz("x", 1), 3, Ns);
  CHECK(r.divisors == 2);
  for (auto const& row : r.rows) {
    CHECK(row.gap == 1);
    CHECK(row.deviation == 0);
  }
  std::vector<unsigned> from4{4, 5, 6, 7};
  r = check_power_gap(xyz("x", 1), 4, from4);
  for (auto const& row : r.rows) {
    CHECK(row.gap == 2);
  }
  std::vector<unsigned> tail{5, 6, 7};
  // xy^2 is primitive, so its traces match those of x exactly.
  r = check_power_gap(xyz("xyy"), 2, tail, parallel());
  CHECK_FALSE(r.pi.value.has_value());
  for (auto const& row : r.rows) {
    CHECK(row.deviation == 0);
  }
  r = check_power_gap(xyz("xxyy"), 2, tail, parallel());
  CHECK(r.pi.value == 2u);
  double last = 1e9;
  for (auto const& row : r.rows) {
    double dev = std::abs(row.deviation.get_d());
    CHECK(dev <= last);
    last = dev;
  }
  CHECK(hypothesis_of([&] { check_power_gap(xyz("xx"), 2, tail); }) == "u-not-a-power");
  CHECK(divisor_count(12) == 6);
}
