// wordmaps: command-line front end.
//
// stdout carries a human summary; --output writes the machine artifact
// (CSV, JSON or DOT) with a provenance header.  Exit codes: 0 ok, 2 usage
// or parse error, 3 hypothesis violated, 4 budget exceeded, 5 internal
// invariant failure.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wordmaps/core_graph.hpp"
#include "wordmaps/error.hpp"
#include "wordmaps/extensions.hpp"
#include "wordmaps/group_table.hpp"
#include "wordmaps/measures.hpp"
#include "wordmaps/mobius.hpp"
#include "wordmaps/perm_powers.hpp"
#include "wordmaps/permutation.hpp"
#include "wordmaps/rational.hpp"
#include "wordmaps/word.hpp"

#ifndef WORDMAPS_VERSION
#define WORDMAPS_VERSION "unknown"
#endif

using namespace wordmaps;
using json = nlohmann::ordered_json;

namespace {

  // ---------------------------------------------------------------------
  // Shared settings and artifact plumbing

  struct Global {
    unsigned      workers = 1;
    std::uint64_t budget  = 1'000'000'000ULL;
    std::string   output;
    std::string   format;
  };

  struct Meta {
    std::string                                      command;
    std::vector<std::pair<std::string, std::string>> config;
    std::optional<std::uint64_t>                     seed;

    void add(std::string key, std::string value) {
      config.emplace_back(std::move(key), std::move(value));
    }
  };

  std::string csv_header(Meta const& meta) {
    std::string s = "# wordmaps " WORDMAPS_VERSION "\n# command: " + meta.command
                    + "\n# config:";
    for (auto const& [k, v] : meta.config) {
      s += " " + k + "=" + v + ";";
    }
    s += "\n# seed: " + (meta.seed ? std::to_string(*meta.seed) : "none") + "\n";
    return s;
  }

  json meta_json(Meta const& meta) {
    json j;
    j["version"] = WORDMAPS_VERSION;
    j["command"] = meta.command;
    json cfg     = json::object();
    for (auto const& [k, v] : meta.config) {
      cfg[k] = v;
    }
    j["config"] = cfg;
    j["seed"]   = meta.seed ? json(*meta.seed) : json(nullptr);
    return j;
  }

  std::string dot_header(Meta const& meta) {
    std::string s = "// wordmaps " WORDMAPS_VERSION "\n// command: " + meta.command
                    + "\n// config:";
    for (auto const& [k, v] : meta.config) {
      s += " " + k + "=" + v + ";";
    }
    return s + "\n// seed: " + (meta.seed ? std::to_string(*meta.seed) : "none")
           + "\n";
  }

  std::string choose_format(Global const&                   g,
                            std::string const&              fallback,
                            std::vector<std::string> const& allowed) {
    std::string f = g.format.empty() ? fallback : g.format;
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
      std::string list;
      for (auto const& a : allowed) {
        list += (list.empty() ? "" : ", ") + a;
      }
      throw ArgumentError("format " + f + " not available here (use " + list + ")");
    }
    return f;
  }

  void write_artifact(Global const& g, std::string const& content) {
    if (g.output.empty()) {
      return;
    }
    std::ofstream out(g.output, std::ios::binary);
    if (!out) {
      throw ArgumentError("cannot write " + g.output);
    }
    out << content;
  }

  std::string fraction_cells(Rational const& q) {
    return numerator_string(q) + "," + denominator_string(q);
  }

  json rational_json(Rational const& q) {
    json j;
    j["numerator"]   = numerator_string(q);
    j["denominator"] = denominator_string(q);
    j["decimal"]     = to_decimal(q);
    return j;
  }

  // ---------------------------------------------------------------------
  // Argument parsing helpers

  std::vector<unsigned> parse_range(std::string const& text) {
    auto const dots = text.find("..");
    auto       num  = [&](std::string const& s) -> unsigned {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos
          || s.size() > 6) {
        throw ParseError("bad N-range \"" + text + "\"");
      }
      return static_cast<unsigned>(std::stoul(s));
    };
    unsigned lo, hi;
    if (dots == std::string::npos) {
      lo = hi = num(text);
    } else {
      lo = num(text.substr(0, dots));
      hi = num(text.substr(dots + 2));
    }
    if (lo == 0 || hi < lo) {
      throw ParseError("N-range \"" + text + "\" must be nonempty, ascending and positive");
    }
    std::vector<unsigned> r;
    for (unsigned n = lo; n <= hi; ++n) {
      r.push_back(n);
    }
    return r;
  }

  using GroupSpec = std::variant<SymmetricGroup, FiniteGroupTable>;

  GroupSpec parse_group(std::string const& text) {
    if (text.size() > 1 && text[0] == 'S'
        && text.find_first_not_of("0123456789", 1) == std::string::npos
        && text.size() < 5) {
      unsigned k = static_cast<unsigned>(std::stoul(text.substr(1)));
      if (k == 0) {
        throw ParseError("group S0 is empty");
      }
      return SymmetricGroup{k};
    }
    if (text.rfind("cayley:", 0) == 0) {
      return FiniteGroupTable::load(text.substr(7));
    }
    throw ParseError("group specifier must be S<k> or cayley:<path>, got \"" + text
                     + "\"");
  }

  std::string letters_note(std::vector<Word> const& originals) {
    auto        used = used_generators(originals);
    std::string s;
    for (std::size_t i = 0; i < used.size(); ++i) {
      s += (s.empty() ? "" : " ") + std::string(1, letter_char(static_cast<int>(used[i])))
           + "->" + std::string(1, letter_char(static_cast<int>(i + 1)));
    }
    return s.empty() ? "(none)" : s;
  }

  // Parses words and relabels their letters jointly onto a, b, c, ...
  std::vector<Word> read_words(std::vector<std::string> const& texts,
                               std::string*                    note = nullptr) {
    std::vector<Word> raw;
    for (auto const& t : texts) {
      raw.push_back(parse_word(t));
    }
    if (note) {
      *note = letters_note(raw);
    }
    return compact(raw);
  }

  Word read_word(std::string const& text, std::string* note = nullptr) {
    return read_words({text}, note).front();
  }

  unsigned joint_rank(std::vector<Word> const& ws) {
    return ws.empty() ? 1 : ws.front().rank();
  }

  std::string join_words(std::vector<Word> const& ws) {
    std::string s;
    for (auto const& w : ws) {
      s += (s.empty() ? "" : " ") + w.to_string();
    }
    return s.empty() ? "(none)" : s;
  }

  std::string join_texts(std::vector<std::string> const& ts) {
    std::string s;
    for (auto const& t : ts) {
      s += (s.empty() ? "" : "|") + t;
    }
    return s;
  }

  json words_json(std::vector<Word> const& ws) {
    json a = json::array();
    for (auto const& w : ws) {
      a.push_back(w.to_string());
    }
    return a;
  }

  EnumerationOptions enumeration(Global const& g) {
    EnumerationOptions o;
    o.work_budget = g.budget;
    o.workers     = g.workers;
    return o;
  }

  MobiusOptions mobius_options(Global const& g) {
    MobiusOptions o;
    o.enumeration        = enumeration(g);
    o.extensions.workers = g.workers;
    return o;
  }

  // Mode flags shared by randomized commands.
  struct Sampling {
    bool          exact = false;
    bool          mc    = false;
    std::uint64_t samples = 0;
    std::uint64_t seed    = 0;
    CLI::Option*  samples_opt = nullptr;
    CLI::Option*  seed_opt    = nullptr;

    void attach(CLI::App* cmd) {
      auto* e = cmd->add_flag("--exact", exact, "Exact enumeration (default)");
      auto* m = cmd->add_flag("--mc", mc, "Monte Carlo estimate");
      samples_opt = cmd->add_option("--samples", samples, "Monte Carlo sample count");
      seed_opt    = cmd->add_option("--seed", seed, "Monte Carlo seed (required with --mc)");
      e->excludes(m);
      e->excludes(samples_opt);
      e->excludes(seed_opt);
    }

    void check() const {
      if (mc && (!*samples_opt || !*seed_opt)) {
        throw ArgumentError("--mc requires --samples and --seed");
      }
      if (!mc && (*samples_opt || *seed_opt)) {
        throw ArgumentError("--samples and --seed are only meaningful with --mc");
      }
    }
  };

  // ---------------------------------------------------------------------
  // word

  void setup_word(CLI::App& app, Global& g) {
    auto* cmd = app.add_subcommand("word", "Free group words: parsing, reduction, roots, substitution");
    cmd->require_subcommand(1);

    struct Args {
      std::string              word;
      std::vector<std::string> images;
    };
    auto a = std::make_shared<Args>();

    auto* parse = cmd->add_subcommand("parse", "Parse and freely reduce a word");
    parse->add_option("--word", a->word, "Word in the grammar")->required();
    parse->callback([a, &g] {
      Word w = parse_word(a->word);
      std::cout << "reduced: " << w.to_string() << "\nlength: " << w.length()
                << "\nrank: " << w.rank() << "\n";
      Meta meta{"word parse", {}, std::nullopt};
      meta.add("word", a->word);
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]   = meta_json(meta);
      j["word"]   = w.to_string();
      j["length"] = w.length();
      j["rank"]   = w.rank();
      write_artifact(g, j.dump(2) + "\n");
    });

    auto* reduce = cmd->add_subcommand("reduce", "Free and cyclic reduction: w = c u c^-1");
    reduce->add_option("--word", a->word, "Word in the grammar")->required();
    reduce->callback([a, &g] {
      Word w  = parse_word(a->word);
      auto cr = cyclic_reduce(w);
      std::cout << "reduced: " << w.to_string() << "\ncyclic core: " << cr.core.to_string()
                << "\nconjugator: " << cr.conjugator.to_string() << "\n";
      Meta meta{"word reduce", {}, std::nullopt};
      meta.add("word", a->word);
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]        = meta_json(meta);
      j["reduced"]     = w.to_string();
      j["cyclic_core"] = cr.core.to_string();
      j["conjugator"]  = cr.conjugator.to_string();
      write_artifact(g, j.dump(2) + "\n");
    });

    auto* root = cmd->add_subcommand("root", "Maximal root: w = u^b with u not a proper power");
    root->add_option("--word", a->word, "Word in the grammar")->required();
    root->callback([a, &g] {
      Word w = parse_word(a->word);
      auto r = maximal_root(w);
      std::cout << "root: " << r.root.to_string() << "\nexponent: " << r.exponent << "\n";
      Meta meta{"word root", {}, std::nullopt};
      meta.add("word", a->word);
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]     = meta_json(meta);
      j["root"]     = r.root.to_string();
      j["exponent"] = r.exponent;
      write_artifact(g, j.dump(2) + "\n");
    });

    auto* sub = cmd->add_subcommand(
        "substitute", "Image w(u_1, ..., u_k); the i-th letter used by w goes to the i-th image");
    sub->add_option("--word", a->word, "Word in the grammar")->required();
    sub->add_option("--image", a->images, "Image words, repeated, in letter order")->allow_extra_args(false)->required();
    sub->callback([a, &g] {
      std::string note;
      Word        w      = read_word(a->word, &note);
      auto        images = read_words(a->images);
      if (images.size() < w.rank()) {
        throw ArgumentError("need " + std::to_string(w.rank()) + " images");
      }
      images.resize(w.rank());
      Word out = substitute(w, images);
      std::cout << "letters: " << note << "\nresult: " << out.to_string() << "\n";
      Meta meta{"word substitute", {}, std::nullopt};
      meta.add("word", a->word);
      meta.add("images", join_texts(a->images));
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]   = meta_json(meta);
      j["result"] = out.to_string();
      write_artifact(g, j.dump(2) + "\n");
    });
  }

  // ---------------------------------------------------------------------
  // graph

  json graph_json(CoreGraph const& G) {
    json j;
    j["ambient_rank"] = G.ambient_rank();
    j["vertices"]     = G.num_vertices();
    j["rank"]         = G.rank();
    j["key"]          = key_to_hex(G.canonical_key());
    json edges        = json::array();
    for (auto const& e : G.edges()) {
      edges.push_back({e.source, std::string(1, letter_char(e.label)), e.target});
    }
    j["edges"] = edges;
    j["basis"] = words_json(G.basis());
    return j;
  }

  void setup_graph(CLI::App& app, Global& g) {
    auto* cmd = app.add_subcommand("graph", "Stallings core graphs of finitely generated subgroups");
    cmd->require_subcommand(1);
    auto gens = std::make_shared<std::vector<std::string>>();

    auto run = [gens, &g](std::string const& name, std::string const& fallback) {
      std::string note;
      auto        ws = read_words(*gens, &note);
      auto const  G  = CoreGraph::from_generators(ws, joint_rank(ws));
      std::cout << "letters: " << note << "\ngenerators: " << join_words(ws)
                << "\nvertices: " << G.num_vertices() << "\nedges: " << G.num_edges()
                << "\nrank: " << G.rank() << "\nbasis: " << join_words(G.basis())
                << "\nkey: " << key_to_hex(G.canonical_key()) << "\n";
      Meta meta{"graph " + name, {}, std::nullopt};
      meta.add("gens", join_texts(*gens));
      auto f = choose_format(g, fallback, {"json", "dot"});
      if (f == "dot") {
        write_artifact(g, dot_header(meta) + G.to_dot("core"));
      } else {
        json j;
        j["meta"]  = meta_json(meta);
        j["graph"] = graph_json(G);
        write_artifact(g, j.dump(2) + "\n");
      }
    };

    auto* fold = cmd->add_subcommand("fold", "Fold the wedge of petals into the core graph");
    fold->add_option("--gen", *gens, "Generator words, repeated")->allow_extra_args(false)->required();
    fold->callback([run] { run("fold", "json"); });

    auto* exp = cmd->add_subcommand("export", "Export the core graph (DOT by default)");
    exp->add_option("--gen", *gens, "Generator words, repeated")->allow_extra_args(false)->required();
    exp->callback([run] { run("export", "dot"); });
  }

  // ---------------------------------------------------------------------
  // ext

  void setup_ext(CLI::App& app, Global& g) {
    auto* cmd = app.add_subcommand(
        "ext", "Algebraic extensions, primitivity rank and free-factor closure");
    cmd->require_subcommand(1);
    struct Args {
      std::vector<std::string> gens, in, images;
      std::string              word;
      unsigned                 max_vertices = 12;
    };
    auto a = std::make_shared<Args>();
    auto ext_opts = [a, &g] {
      ExtensionOptions o;
      o.workers      = g.workers;
      o.max_vertices = a->max_vertices;
      return o;
    };

    auto* list = cmd->add_subcommand(
        "list", "X-quotients of H, inclusions, free-factor relations and the algebraic extensions");
    list->add_option("--gen", a->gens, "Generators of H, repeated")->allow_extra_args(false)->required();
    list->add_option("--max-vertices", a->max_vertices, "Quotient size cap");
    list->callback([a, &g, ext_opts] {
      std::string note;
      auto        ws    = read_words(a->gens, &note);
      auto const  H     = CoreGraph::from_generators(ws, joint_rank(ws));
      auto const  poset = algebraic_extensions(H, ext_opts());
      std::cout << "letters: " << note << "\nquotients: " << poset.nodes.size()
                << "\nalgebraic extensions:\n";
      for (auto i : poset.algebraic_indices()) {
        std::cout << "  rank " << poset.nodes[i].rank() << ": "
                  << join_words(poset.nodes[i].basis()) << "\n";
      }
      Meta meta{"ext list", {}, std::nullopt};
      meta.add("gens", join_texts(a->gens));
      meta.add("max_vertices", std::to_string(a->max_vertices));
      auto f = choose_format(g, "json", {"json", "dot"});
      if (f == "dot") {
        write_artifact(g, dot_header(meta) + poset_to_dot(poset));
      } else {
        json j;
        j["meta"]  = meta_json(meta);
        j["poset"] = json::parse(poset_to_json(poset));
        write_artifact(g, j.dump(2) + "\n");
      }
    });

    auto* pi_cmd = cmd->add_subcommand(
        "pi", "Primitivity rank: smallest rank of a proper algebraic extension of <w>, and how many attain it");
    pi_cmd->add_option("--word", a->word, "Word")->required();
    pi_cmd->add_option("--max-vertices", a->max_vertices, "Quotient size cap");
    pi_cmd->callback([a, &g, ext_opts] {
      std::string note;
      Word        w = read_word(a->word, &note);
      if (w.is_identity()) {
        throw ArgumentError("the identity has no primitivity rank");
      }
      auto const H     = CoreGraph::from_generators({w}, w.rank());
      auto const poset = algebraic_extensions(H, ext_opts());
      auto const inv   = pi(H, ext_opts());
      std::cout << "letters: " << note << "\npi: " << inv.to_string() << "\nC: " << inv.count
                << "\n";
      Meta meta{"ext pi", {}, std::nullopt};
      meta.add("word", a->word);
      choose_format(g, "json", {"json"});
      json j;
      j["meta"] = meta_json(meta);
      j["pi"]   = inv.value ? json(*inv.value) : json("inf");
      j["C"]    = inv.count;
      json ext  = json::array();
      for (auto i : poset.algebraic_indices()) {
        ext.push_back({{"rank", poset.nodes[i].rank()},
                       {"basis", words_json(poset.nodes[i].basis())},
                       {"proper", i != poset.base_index}});
      }
      j["extensions"] = ext;
      write_artifact(g, j.dump(2) + "\n");
    });

    auto* piota = cmd->add_subcommand(
        "pi-iota",
        "Relative primitivity rank of <w> under the embedding x_i -> u_i of F_k into F_r");
    piota->add_option("--word", a->word, "Word w in F_k")->required();
    piota->add_option("--image", a->images, "Images u_i, repeated")->allow_extra_args(false)->required();
    piota->callback([a, &g, ext_opts] {
      Word       w      = read_word(a->word);
      auto       images = read_words(a->images);
      unsigned   k      = static_cast<unsigned>(images.size());
      if (w.rank() > k) {
        throw ArgumentError("need " + std::to_string(w.rank()) + " images");
      }
      auto const H   = CoreGraph::from_generators({w.with_rank(k)}, k);
      auto const inv = pi_iota(H, images, ext_opts());
      std::cout << "pi_iota: " << inv.to_string() << "\nC: " << inv.count << "\n";
      Meta meta{"ext pi-iota", {}, std::nullopt};
      meta.add("word", a->word);
      meta.add("images", join_texts(a->images));
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]    = meta_json(meta);
      j["pi_iota"] = inv.value ? json(*inv.value) : json("inf");
      j["C"]       = inv.count;
      write_artifact(g, j.dump(2) + "\n");
    });

    auto* ff = cmd->add_subcommand(
        "ff-closure", "The unique A with H algebraic in A and A a free factor of J");
    ff->add_option("--gen", a->gens, "Generators of H, repeated")->allow_extra_args(false)->required();
    ff->add_option("--in", a->in, "Generators of J, repeated (default: the whole free group)")->allow_extra_args(false);
    ff->callback([a, &g, ext_opts] {
      std::vector<std::string> texts = a->gens;
      texts.insert(texts.end(), a->in.begin(), a->in.end());
      std::string note;
      auto        ws = read_words(texts, &note);
      unsigned    r  = joint_rank(ws);
      std::vector<Word> hg(ws.begin(), ws.begin() + static_cast<long>(a->gens.size()));
      std::vector<Word> jg(ws.begin() + static_cast<long>(a->gens.size()), ws.end());
      auto const H = CoreGraph::from_generators(hg, r);
      auto const J = jg.empty() ? CoreGraph::rose(r) : CoreGraph::from_generators(jg, r);
      auto const A = ff_closure(H, J, ext_opts());
      std::cout << "letters: " << note << "\nclosure rank: " << A.rank()
                << "\nclosure basis: " << join_words(A.basis()) << "\n";
      Meta meta{"ext ff-closure", {}, std::nullopt};
      meta.add("gens", join_texts(a->gens));
      meta.add("in", join_texts(a->in));
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]    = meta_json(meta);
      j["closure"] = graph_json(A);
      write_artifact(g, j.dump(2) + "\n");
    });
  }

  // ---------------------------------------------------------------------
  // measure

  void setup_measure(CLI::App& app, Global& g) {
    auto* cmd = app.add_subcommand(
        "measure", "Word measures and expected fixed points on symmetric and finite groups");
    cmd->require_subcommand(1);
    struct Args {
      std::string              word, w1, w2, range, group;
      std::vector<std::string> gens;
      unsigned                 rank = 0;
      Sampling                 sampling;
    };
    auto a = std::make_shared<Args>();

    auto* trw = cmd->add_subcommand(
        "trw",
        "Tr_w(N), the expected number of fixed points of w(σ_1, ..., σ_r); equals 1 for "
        "primitive words and 1 + 1/(N-1) for x^3 y^2");
    trw->add_option("--word", a->word, "Word")->required();
    trw->add_option("--n", a->range, "N or a..b")->required();
    a->sampling.attach(trw);
    trw->callback([a, &g] {
      a->sampling.check();
      Word w  = read_word(a->word);
      auto Ns = parse_range(a->range);
      Meta meta{"measure trw", {}, std::nullopt};
      meta.add("word", a->word);
      meta.add("n", a->range);
      meta.add("mode", a->sampling.mc ? "mc" : "exact");
      choose_format(g, "csv", {"csv"});
      std::string csv;
      if (a->sampling.mc) {
        meta.add("samples", std::to_string(a->sampling.samples));
        meta.seed = a->sampling.seed;
        csv       = csv_header(meta) + "N,estimate,standard_error,samples\n";
        for (auto N : Ns) {
          auto e = trw_monte_carlo(w, N, a->sampling.samples, a->sampling.seed, g.workers);
          char buf[128];
          std::snprintf(buf, sizeof buf, "%u,%.15g,%.15g,%llu\n", N, e.estimate,
                        e.standard_error, static_cast<unsigned long long>(e.samples));
          csv += buf;
          std::cout << "N=" << N << "  Tr ~ " << e.estimate << " +- " << e.standard_error << "\n";
        }
      } else {
        meta.add("budget", std::to_string(g.budget));
        csv = csv_header(meta) + "N,numerator,denominator,decimal\n";
        for (auto N : Ns) {
          auto q = trw_exact(w, N, enumeration(g));
          csv += std::to_string(N) + "," + fraction_cells(q) + "," + to_decimal(q) + "\n";
          std::cout << "N=" << N << "  Tr = " << to_string(q) << "\n";
        }
      }
      write_artifact(g, csv);
    });

    auto* phi = cmd->add_subcommand(
        "phi",
        "Φ_H(N), the expected number of common fixed points of the images of H's generators; "
        "N^{1-rank} for free factors");
    phi->add_option("--gen", a->gens, "Generators of H, repeated")->allow_extra_args(false);
    phi->add_option("--rank", a->rank, "Ambient rank (default: letters used)");
    phi->add_option("--n", a->range, "N or a..b")->required();
    phi->add_flag("--exact", "Exact enumeration (the only mode)");
    phi->callback([a, &g] {
      auto     ws = read_words(a->gens);
      unsigned r  = std::max(a->rank, ws.empty() ? 1u : joint_rank(ws));
      for (auto& w : ws) {
        w = w.with_rank(r);
      }
      auto Ns = parse_range(a->range);
      Meta meta{"measure phi", {}, std::nullopt};
      meta.add("gens", join_texts(a->gens));
      meta.add("rank", std::to_string(r));
      meta.add("n", a->range);
      meta.add("budget", std::to_string(g.budget));
      choose_format(g, "csv", {"csv"});
      std::string csv = csv_header(meta) + "N,numerator,denominator,decimal\n";
      for (auto N : Ns) {
        auto q = phi_exact(ws, r, N, enumeration(g));
        csv += std::to_string(N) + "," + fraction_cells(q) + "," + to_decimal(q) + "\n";
        std::cout << "N=" << N << "  Phi = " << to_string(q) << "\n";
      }
      write_artifact(g, csv);
    });

    auto measure_of = [&g](Word const& w, GroupSpec const& G) {
      return std::visit([&](auto const& grp) { return word_measure_exact(w, grp, enumeration(g)); },
                        G);
    };

    auto* table = cmd->add_subcommand(
        "table", "The w-measure: push-forward of the uniform measure, aggregated by conjugacy class");
    table->add_option("--word", a->word, "Word")->required();
    table->add_option("--group", a->group, "S<k> or cayley:<path>")->required();
    table->add_flag("--exact", "Exact enumeration (the only mode)");
    table->callback([a, &g, measure_of] {
      Word       w = read_word(a->word);
      auto const m = measure_of(w, parse_group(a->group));
      Meta meta{"measure table", {}, std::nullopt};
      meta.add("word", a->word);
      meta.add("group", a->group);
      meta.add("budget", std::to_string(g.budget));
      choose_format(g, "csv", {"csv"});
      std::string csv = csv_header(meta) + "class,size,numerator,denominator,decimal\n";
      for (std::size_t c = 0; c < m.class_labels.size(); ++c) {
        csv += "\"" + m.class_labels[c] + "\"," + std::to_string(m.class_sizes[c]) + ","
               + fraction_cells(m.probabilities[c]) + "," + to_decimal(m.probabilities[c])
               + "\n";
        std::cout << m.class_labels[c] << "  " << to_string(m.probabilities[c]) << "\n";
      }
      write_artifact(g, csv);
    });

    auto* compare = cmd->add_subcommand(
        "compare",
        "Exact comparison of two word measures on one group, with a witness class when they differ");
    compare->add_option("--w1", a->w1, "First word")->required();
    compare->add_option("--w2", a->w2, "Second word")->required();
    compare->add_option("--group", a->group, "S<k> or cayley:<path>")->required();
    compare->add_flag("--exact", "Exact enumeration (the only mode)");
    compare->callback([a, &g, measure_of] {
      Word       w1  = read_word(a->w1);
      Word       w2  = read_word(a->w2);
      auto const G   = parse_group(a->group);
      auto const cmp = compare_measures(measure_of(w1, G), measure_of(w2, G));
      std::cout << "verdict: " << (cmp.equal ? "equal" : "unequal") << "\n";
      if (!cmp.equal) {
        std::cout << "witness class: " << cmp.witness_label << "  (" << to_string(cmp.first)
                  << " vs " << to_string(cmp.second) << ")\n";
      }
      Meta meta{"measure compare", {}, std::nullopt};
      meta.add("w1", a->w1);
      meta.add("w2", a->w2);
      meta.add("group", a->group);
      meta.add("budget", std::to_string(g.budget));
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]    = meta_json(meta);
      j["verdict"] = cmp.equal ? "equal" : "unequal";
      if (!cmp.equal) {
        j["witness"] = {{"class", cmp.witness_label},
                        {"w1", rational_json(cmp.first)},
                        {"w2", rational_json(cmp.second)}};
      }
      write_artifact(g, j.dump(2) + "\n");
    });

    auto* epi = cmd->add_subcommand(
        "epiim", "Images of w under all epimorphisms F_r -> G");
    epi->add_option("--word", a->word, "Word")->required();
    epi->add_option("--group", a->group, "S<k> (k <= 5) or cayley:<path>")->required();
    epi->add_option("--rank", a->rank, "Rank r of the free group (default: letters used)");
    epi->callback([a, &g] {
      Word     w = read_word(a->word);
      unsigned r = std::max(a->rank, w.rank());
      auto     G = std::visit(
          [](auto const& grp) -> FiniteGroupTable {
            if constexpr (std::is_same_v<std::decay_t<decltype(grp)>, SymmetricGroup>) {
              return FiniteGroupTable::symmetric(grp.degree);
            } else {
              return grp;
            }
          },
          parse_group(a->group));
      auto img = epi_image(w.with_rank(r), G, r, enumeration(g));
      std::cout << "image size: " << img.size() << "\n";
      json names = json::array();
      for (auto e : img) {
        std::cout << "  " << G.name(e) << "\n";
        names.push_back(G.name(e));
      }
      Meta meta{"measure epiim", {}, std::nullopt};
      meta.add("word", a->word);
      meta.add("group", a->group);
      meta.add("rank", std::to_string(r));
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]     = meta_json(meta);
      j["elements"] = names;
      write_artifact(g, j.dump(2) + "\n");
    });
  }

  // ---------------------------------------------------------------------
  // mobius

  void write_summary(std::string const& path, json const& j) {
    if (path.empty()) {
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw ArgumentError("cannot write " + path);
    }
    out << j.dump(2) << "\n";
  }

  void setup_mobius(CLI::App& app, Global& g) {
    auto* cmd = app.add_subcommand(
        "mobius", "Möbius derivation R over algebraic extensions and the expansions built on it");
    cmd->require_subcommand(1);
    struct Args {
      std::vector<std::string> gens, images;
      std::string              word, range, summary;
      unsigned                 d = 2;
    };
    auto a = std::make_shared<Args>();

    auto* derive = cmd->add_subcommand(
        "derive",
        "R_{H,J}(N) = Φ_{H,J}(N) minus R over the algebraic extensions strictly below J");
    derive->add_option("--gen", a->gens, "Generators of H, repeated")->allow_extra_args(false)->required();
    derive->add_option("--n", a->range, "N or a..b")->required();
    derive->callback([a, &g] {
      std::string note;
      auto        ws    = read_words(a->gens, &note);
      auto const  H     = CoreGraph::from_generators(ws, joint_rank(ws));
      auto const  mo    = mobius_options(g);
      auto const  poset = algebraic_extensions(H, mo.extensions);
      Meta meta{"mobius derive", {}, std::nullopt};
      meta.add("gens", join_texts(a->gens));
      meta.add("n", a->range);
      meta.add("budget", std::to_string(g.budget));
      choose_format(g, "csv", {"csv"});
      std::string csv = csv_header(meta)
                        + "N,node,rank,basis,phi_num,phi_den,R_num,R_den\n";
      std::cout << "letters: " << note << "\n";
      for (auto N : parse_range(a->range)) {
        auto const t = derive_R(poset, N, mo.enumeration);
        for (auto j : t.order) {
          auto const& J = poset.nodes[j];
          csv += std::to_string(N) + "," + std::to_string(j) + "," + std::to_string(J.rank())
                 + ",\"" + join_words(J.basis()) + "\"," + fraction_cells(t.phi[j]) + ","
                 + fraction_cells(t.values[j]) + "\n";
          std::cout << "N=" << N << "  J=<" << join_words(J.basis()) << ">  Phi="
                    << to_string(t.phi[j]) << "  R=" << to_string(t.values[j]) << "\n";
        }
      }
      write_artifact(g, csv);
    });

    auto* via = cmd->add_subcommand(
        "via-expansion",
        "Φ_{H,F}(N) as the sum of R_{H,J}(N) over algebraic extensions, checked against direct enumeration");
    via->add_option("--gen", a->gens, "Generators of H, repeated")->allow_extra_args(false)->required();
    via->add_option("--n", a->range, "N or a..b")->required();
    via->callback([a, &g] {
      auto       ws = read_words(a->gens);
      unsigned   r  = joint_rank(ws);
      auto const H  = CoreGraph::from_generators(ws, r);
      auto const mo = mobius_options(g);
      Meta meta{"mobius via-expansion", {}, std::nullopt};
      meta.add("gens", join_texts(a->gens));
      meta.add("n", a->range);
      meta.add("budget", std::to_string(g.budget));
      choose_format(g, "csv", {"csv"});
      std::string csv = csv_header(meta) + "N,lhs_num,lhs_den,rhs_num,rhs_den,verdict\n";
      for (auto N : parse_range(a->range)) {
        auto lhs = phi_via_expansion(H, r, N, mo);
        auto rhs = phi_exact(ws, r, N, mo.enumeration);
        std::string verdict = lhs == rhs ? "equal" : "different";
        csv += std::to_string(N) + "," + fraction_cells(lhs) + "," + fraction_cells(rhs) + ","
               + verdict + "\n";
        std::cout << "N=" << N << "  expansion=" << to_string(lhs) << "  direct="
                  << to_string(rhs) << "  " << verdict << "\n";
      }
      write_artifact(g, csv);
    });

    auto* fit = cmd->add_subcommand(
        "fit",
        "Fit Tr_w(N) = 1 + C N^{1-π} + ... and compare with the primitivity rank and its count");
    fit->add_option("--word", a->word, "Word")->required();
    fit->add_option("--n", a->range, "a..b with at least three values")->required();
    fit->callback([a, &g] {
      Word       w   = read_word(a->word);
      auto const Ns  = parse_range(a->range);
      auto const mo  = mobius_options(g);
      auto const res = fit_expansion(w, Ns, mo.enumeration);
      auto const inv = pi_of_word(w, mo.extensions);
      std::cout << "pi_estimate: " << (res.pi ? std::to_string(*res.pi) : "inf")
                << "\nC_estimate: " << res.C << "\npi: " << inv.to_string()
                << "\nC: " << inv.count << "\n";
      Meta meta{"mobius fit", {}, std::nullopt};
      meta.add("word", a->word);
      meta.add("n", a->range);
      meta.add("budget", std::to_string(g.budget));
      auto f = choose_format(g, "json", {"json", "csv"});
      if (f == "csv") {
        std::string csv = csv_header(meta) + "N,numerator,denominator,decimal,residual\n";
        for (std::size_t i = 0; i < Ns.size(); ++i) {
          char buf[64] = "";
          if (res.pi) {
            std::snprintf(buf, sizeof buf, "%.15g", res.residuals[i]);
          }
          csv += std::to_string(Ns[i]) + "," + fraction_cells(res.traces[i]) + ","
                 + to_decimal(res.traces[i]) + "," + buf + "\n";
        }
        write_artifact(g, csv);
      } else {
        json j;
        j["meta"]        = meta_json(meta);
        j["pi_estimate"] = res.pi ? json(*res.pi) : json("inf");
        j["C_estimate"]  = res.C;
        j["C_mean"]      = res.C_mean;
        j["pi"]          = inv.value ? json(*inv.value) : json("inf");
        j["C"]           = inv.count;
        json rows        = json::array();
        for (std::size_t i = 0; i < Ns.size(); ++i) {
          json row   = rational_json(res.traces[i]);
          row["N"]   = Ns[i];
          if (res.pi) {
            row["residual"] = res.residuals[i];
          }
          rows.push_back(row);
        }
        j["rows"] = rows;
        write_artifact(g, j.dump(2) + "\n");
      }
    });

    auto* thm = cmd->add_subcommand(
        "thm14",
        "Tr_w(N) < Tr_{w(u_1..u_k)}(N) when <w> is algebraic in F_k and the u_i freely generate a "
        "non-free-factor");
    thm->add_option("--word", a->word, "Word w in F_k")->required();
    thm->add_option("--image", a->images, "Images u_i, repeated")->allow_extra_args(false)->required();
    thm->add_option("--n", a->range, "N or a..b")->required();
    thm->add_option("--summary", a->summary, "Write the JSON summary here");
    thm->callback([a, &g] {
      Word       w      = read_word(a->word);
      auto       images = read_words(a->images);
      auto const mo     = mobius_options(g);
      auto const Ns     = parse_range(a->range);
      auto const rep    = check_theorem_1_4(w, images, Ns, mo);
      Meta meta{"mobius thm14", {}, std::nullopt};
      meta.add("word", a->word);
      meta.add("images", join_texts(a->images));
      meta.add("n", a->range);
      meta.add("budget", std::to_string(g.budget));
      choose_format(g, "csv", {"csv"});
      std::string csv = csv_header(meta) + "N,lhs_num,lhs_den,rhs_num,rhs_den,verdict\n";
      json        rows = json::array();
      for (auto const& r : rep.rows) {
        std::string v = r.strict ? "strict" : "not-strict";
        csv += std::to_string(r.N) + "," + fraction_cells(r.lhs) + "," + fraction_cells(r.rhs)
               + "," + v + "\n";
        std::cout << "N=" << r.N << "  " << to_string(r.lhs) << " < " << to_string(r.rhs)
                  << "  " << v << "\n";
        rows.push_back({{"N", r.N}, {"verdict", v}, {"scaled_gap", r.scaled_gap}});
      }
      std::cout << "pi_iota: " << rep.pi_iota.to_string() << "  C: " << rep.pi_iota.count << "\n";
      write_artifact(g, csv);
      json j;
      j["meta"]       = meta_json(meta);
      j["hypotheses"] = rep.hypotheses;
      j["image_word"] = rep.image_word.to_string();
      j["pi_iota"]    = rep.pi_iota.value ? json(*rep.pi_iota.value) : json("inf");
      j["C"]          = rep.pi_iota.count;
      j["all_strict"] = rep.all_strict();
      j["rows"]       = rows;
      write_summary(a->summary, j);
    });

    auto* gap = cmd->add_subcommand(
        "power-gap",
        "f_u(N) = Tr_{u^d}(N) - Tr_u(N) against δ(d) - 1, δ the number of divisors");
    gap->add_option("--word", a->word, "Non-power u")->required();
    gap->add_option("--d", a->d, "Exponent d")->required();
    gap->add_option("--n", a->range, "N or a..b")->required();
    gap->callback([a, &g] {
      Word       u   = read_word(a->word);
      auto const rep = check_power_gap(u, a->d, parse_range(a->range), mobius_options(g));
      Meta meta{"mobius power-gap", {}, std::nullopt};
      meta.add("word", a->word);
      meta.add("d", std::to_string(a->d));
      meta.add("n", a->range);
      meta.add("budget", std::to_string(g.budget));
      choose_format(g, "csv", {"csv"});
      std::string csv = csv_header(meta)
                        + "N,power_num,power_den,base_num,base_den,gap_num,gap_den,"
                          "deviation_num,deviation_den\n";
      std::cout << "delta(d) - 1 = " << rep.divisors - 1 << "  pi(u) = " << rep.pi.to_string()
                << "\n";
      for (auto const& r : rep.rows) {
        csv += std::to_string(r.N) + "," + fraction_cells(r.power_trace) + ","
               + fraction_cells(r.base_trace) + "," + fraction_cells(r.gap) + ","
               + fraction_cells(r.deviation) + "\n";
        std::cout << "N=" << r.N << "  f=" << to_string(r.gap) << "  deviation="
                  << to_string(r.deviation) << "\n";
      }
      write_artifact(g, csv);
    });
  }

  // ---------------------------------------------------------------------
  // perm

  void setup_perm(CLI::App& app, Global& g) {
    auto* cmd = app.add_subcommand("perm", "Cycle statistics and d-th powers of permutations");
    cmd->require_subcommand(1);
    struct Args {
      std::string perm, range, word;
      unsigned    degree = 0, d = 2, b = 1, t = 1;
      std::uint64_t samples = 0, seed = 0;
      Sampling    sampling;
    };
    auto a = std::make_shared<Args>();

    auto read_perm = [a] { return parse_cycles(a->perm, a->degree); };

    auto* ct = cmd->add_subcommand("cycle-type", "Cycle counts c_t of a permutation");
    ct->add_option("--perm", a->perm, "Cycle notation, 1-based")->required();
    ct->add_option("--degree", a->degree, "Degree N")->required();
    ct->callback([a, &g, read_perm] {
      auto const s    = read_perm();
      auto const type = s.cycle_type();
      std::cout << "cycle type: " << type.to_string() << "\n";
      Meta meta{"perm cycle-type", {}, std::nullopt};
      meta.add("perm", a->perm);
      meta.add("degree", std::to_string(a->degree));
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]   = meta_json(meta);
      json counts = json::object();
      for (auto [t, c] : type.counts) {
        counts[std::to_string(t)] = c;
      }
      j["counts"] = counts;
      write_artifact(g, j.dump(2) + "\n");
    });

    auto* isp = cmd->add_subcommand(
        "is-power",
        "σ is a d-th power iff the product of p^{ν_p(d)} over primes p | t divides c_t for all t");
    isp->add_option("--perm", a->perm, "Cycle notation, 1-based")->required();
    isp->add_option("--degree", a->degree, "Degree N")->required();
    isp->add_option("--d", a->d, "Exponent d")->required();
    isp->callback([a, &g, read_perm] {
      bool const r = is_dth_power(read_perm(), a->d);
      std::cout << (r ? "true" : "false") << "\n";
      Meta meta{"perm is-power", {}, std::nullopt};
      meta.add("perm", a->perm);
      meta.add("degree", std::to_string(a->degree));
      meta.add("d", std::to_string(a->d));
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]     = meta_json(meta);
      j["is_power"] = r;
      write_artifact(g, j.dump(2) + "\n");
    });

    auto* root = cmd->add_subcommand("root", "A d-th root built by interleaving cycles, or none");
    root->add_option("--perm", a->perm, "Cycle notation, 1-based")->required();
    root->add_option("--degree", a->degree, "Degree N")->required();
    root->add_option("--d", a->d, "Exponent d")->required();
    root->callback([a, &g, read_perm] {
      auto const r = dth_root(read_perm(), a->d);
      std::cout << (r ? r->to_string() : std::string("none")) << "\n";
      Meta meta{"perm root", {}, std::nullopt};
      meta.add("perm", a->perm);
      meta.add("degree", std::to_string(a->degree));
      meta.add("d", std::to_string(a->d));
      choose_format(g, "json", {"json"});
      json j;
      j["meta"] = meta_json(meta);
      j["root"] = r ? json(r->to_string()) : json(nullptr);
      write_artifact(g, j.dump(2) + "\n");
    });

    auto* mom = cmd->add_subcommand(
        "moments",
        "E[c_t(σ^b)] = 1/t for N >= bt and E[c_t(σ^b)^2] = b/t + 1/t^2 for N >= 2bt, b | t");
    mom->add_option("--b", a->b, "b")->required();
    mom->add_option("--t", a->t, "t, a multiple of b")->required();
    mom->add_option("--n", a->range, "N or a..b")->required();
    a->sampling.attach(mom);
    mom->callback([a, &g] {
      a->sampling.check();
      Meta meta{"perm moments", {}, std::nullopt};
      meta.add("b", std::to_string(a->b));
      meta.add("t", std::to_string(a->t));
      meta.add("n", a->range);
      meta.add("mode", a->sampling.mc ? "mc" : "exact");
      choose_format(g, "csv", {"csv"});
      std::string csv;
      if (a->sampling.mc) {
        meta.add("samples", std::to_string(a->sampling.samples));
        meta.seed = a->sampling.seed;
        csv = csv_header(meta) + "N,first,first_error,second,second_error\n";
        for (auto N : parse_range(a->range)) {
          auto e = moments_monte_carlo(a->b, a->t, N, a->sampling.samples, a->sampling.seed,
                                       g.workers);
          char buf[160];
          std::snprintf(buf, sizeof buf, "%u,%.15g,%.15g,%.15g,%.15g\n", N, e.first,
                        e.first_error, e.second, e.second_error);
          csv += buf;
          std::cout << "N=" << N << "  E[c] ~ " << e.first << "  E[c^2] ~ " << e.second << "\n";
        }
      } else {
        csv = csv_header(meta) + "N,first_num,first_den,second_num,second_den\n";
        for (auto N : parse_range(a->range)) {
          auto m = moments_exact(a->b, a->t, N);
          csv += std::to_string(N) + "," + fraction_cells(m.first) + ","
                 + (m.second ? fraction_cells(*m.second) : std::string(",")) + "\n";
          std::cout << "N=" << N << "  E[c] = " << to_string(m.first) << "  E[c^2] = "
                    << (m.second ? to_string(*m.second) : std::string("(needs N >= 2bt)"))
                    << "\n";
        }
      }
      write_artifact(g, csv);
    });

    auto* obs = cmd->add_subcommand(
        "obstruction",
        "Search for φ: F_r -> S_N with φ(w) not a d-th power; if φ(w) is always a d-th power then "
        "w is a d-th power");
    obs->add_option("--word", a->word, "Word")->required();
    obs->add_option("--d", a->d, "Exponent d")->required();
    obs->add_option("--n", a->range, "N or a..b")->required();
    obs->add_option("--samples", a->samples, "Random tuples per N beyond the exhaustive budget")
        ->required();
    obs->add_option("--seed", a->seed, "Seed for the random search")->required();
    obs->callback([a, &g] {
      Word       w  = read_word(a->word);
      auto const Ns = parse_range(a->range);
      auto const r  = word_power_obstruction(w, a->d, Ns, a->samples, a->seed, enumeration(g));
      std::cout << "verdict: " << r.verdict() << "\npower in free group: "
                << (r.power_in_free ? "yes" : "no") << "\n";
      Meta meta{"perm obstruction", {}, a->seed};
      meta.add("word", a->word);
      meta.add("d", std::to_string(a->d));
      meta.add("n", a->range);
      meta.add("samples", std::to_string(a->samples));
      meta.add("budget", std::to_string(g.budget));
      choose_format(g, "json", {"json"});
      json j;
      j["meta"]          = meta_json(meta);
      j["verdict"]       = r.verdict();
      j["power_in_free"] = r.power_in_free;
      if (r.witness_found) {
        json tuple = json::object();
        for (std::size_t i = 0; i < r.images.size(); ++i) {
          tuple[std::string(1, letter_char(static_cast<int>(r.generators[i])))]
              = r.images[i].to_string();
          std::cout << "  " << letter_char(static_cast<int>(r.generators[i])) << " -> "
                    << r.images[i].to_string() << "\n";
        }
        j["witness"] = {{"N", r.witness_degree}, {"tuple", tuple}};
      }
      j["exhaustive"] = r.exhaustive_degrees;
      j["sampled"]    = r.sampled_degrees;
      write_artifact(g, j.dump(2) + "\n");
    });
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word maps on finite groups: free-group combinatorics, exact word measures, "
               "Möbius derivations and permutation powers",
               "wordmaps"};
  app.set_version_flag("--version", WORDMAPS_VERSION);
  app.require_subcommand(1);
  Global g;
  app.add_option("--workers", g.workers, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--budget", g.budget, "Work-unit budget for exact enumeration");
  app.add_option("-o,--output", g.output, "Write the machine artifact to this file");
  app.add_option("--format", g.format, "Artifact format: csv, json or dot")
      ->check(CLI::IsMember({"csv", "json", "dot"}));
  // Global options may also follow the subcommands.
  app.fallthrough();
  for (auto* f : {setup_word, setup_graph, setup_ext, setup_measure, setup_mobius, setup_perm}) {
    f(app, g);
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForVersion const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (ArgumentError const& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (HypothesisError const& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (BudgetExceeded const& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (InvariantError const& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return 5;
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
