#include "wordmaps/group_table.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "wordmaps/error.hpp"
#include "wordmaps/permutation.hpp"

namespace wordmaps {

  namespace {
    std::string triple(std::size_t a, std::size_t b, std::size_t c) {
      return "(" + std::to_string(a) + ", " + std::to_string(b) + ", "
             + std::to_string(c) + ")";
    }
  }  // namespace

  FiniteGroupTable::FiniteGroupTable(
      std::vector<std::vector<element_type>> table,
      std::vector<std::string>               names,
      std::string                            label)
      : _table(std::move(table)),
        _names(std::move(names)),
        _label(std::move(label)) {
    std::size_t const n = _table.size();
    if (n == 0) {
      throw ArgumentError("invalid group table: order must be positive");
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (_table[a].size() != n) {
        throw ArgumentError("invalid group table: row " + std::to_string(a)
                            + " has " + std::to_string(_table[a].size())
                            + " entries, expected " + std::to_string(n));
      }
      for (std::size_t b = 0; b < n; ++b) {
        if (_table[a][b] >= n) {
          throw ArgumentError("invalid group table: closure fails, entry ("
                              + std::to_string(a) + ", " + std::to_string(b)
                              + ") = " + std::to_string(_table[a][b]));
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (_table[0][a] != a || _table[a][0] != a) {
        throw ArgumentError("invalid group table: index 0 is not a two-sided "
                            "identity (fails at element "
                            + std::to_string(a) + ")");
      }
    }
    _inverse.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      bool found = false;
      for (std::size_t b = 0; b < n && !found; ++b) {
        if (_table[a][b] == 0 && _table[b][a] == 0) {
          _inverse[a] = static_cast<element_type>(b);
          found       = true;
        }
      }
      if (!found) {
        throw ArgumentError("invalid group table: element "
                            + std::to_string(a) + " has no inverse");
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto const ab = _table[a][b];
        for (std::size_t c = 0; c < n; ++c) {
          if (_table[ab][c] != _table[a][_table[b][c]]) {
            throw ArgumentError("invalid group table: associativity fails at "
                                + triple(a, b, c));
          }
        }
      }
    }
    if (_names.empty()) {
      for (std::size_t a = 0; a < n; ++a) {
        _names.push_back(a == 0 ? std::string("e") : "g" + std::to_string(a));
      }
    } else if (_names.size() != n) {
      throw ArgumentError("invalid group table: " + std::to_string(_names.size())
                          + " names for order " + std::to_string(n));
    }
    if (_label.empty()) {
      _label = "group of order " + std::to_string(n);
    }
    _class_of.assign(n, n);
    for (std::size_t h = 0; h < n; ++h) {
      if (_class_of[h] != n) {
        continue;
      }
      std::vector<bool> in(n, false);
      for (std::size_t g = 0; g < n; ++g) {
        in[_table[_table[g][h]][_inverse[g]]] = true;
      }
      std::vector<element_type> cls;
      for (std::size_t x = 0; x < n; ++x) {
        if (in[x]) {
          cls.push_back(static_cast<element_type>(x));
          _class_of[x] = _classes.size();
        }
      }
      _classes.push_back(std::move(cls));
    }
  }

  FiniteGroupTable FiniteGroupTable::from_json(std::string_view text,
                                               std::string      label) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw ParseError(std::string("group table JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("order") || !j.contains("table")) {
      throw ParseError("group table JSON: expected an object with \"order\" "
                       "and \"table\"");
    }
    std::vector<std::vector<element_type>> table;
    std::vector<std::string>               names;
    std::size_t                            order = 0;
    try {
      order = j.at("order").get<std::size_t>();
      table = j.at("table").get<std::vector<std::vector<element_type>>>();
      if (j.contains("names")) {
        names = j.at("names").get<std::vector<std::string>>();
      }
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(std::string("group table JSON: ") + e.what());
    }
    if (table.size() != order) {
      throw ArgumentError("invalid group table: \"order\" is "
                          + std::to_string(order) + " but the table has "
                          + std::to_string(table.size()) + " rows");
    }
    return FiniteGroupTable(std::move(table), std::move(names), std::move(label));
  }

  FiniteGroupTable FiniteGroupTable::load(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ArgumentError("cannot read " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str(), path.filename().string());
  }

  FiniteGroupTable FiniteGroupTable::symmetric(unsigned degree) {
    if (degree == 0 || degree > 5) {
      throw ArgumentError("symmetric group tables are limited to degree 1..5");
    }
    auto                                   perms = all_permutations(degree);
    std::map<Permutation, element_type>    index;
    std::vector<std::string>               names;
    for (std::size_t i = 0; i < perms.size(); ++i) {
      index.emplace(perms[i], static_cast<element_type>(i));
      names.push_back(perms[i].to_string());
    }
    std::vector<std::vector<element_type>> table(perms.size(),
                                                 std::vector<element_type>(perms.size()));
    for (std::size_t a = 0; a < perms.size(); ++a) {
      for (std::size_t b = 0; b < perms.size(); ++b) {
        table[a][b] = index.at(compose(perms[a], perms[b]));
      }
    }
    return FiniteGroupTable(std::move(table), std::move(names),
                            "S" + std::to_string(degree));
  }

  FiniteGroupTable FiniteGroupTable::cyclic(unsigned order) {
    if (order == 0) {
      throw ArgumentError("cyclic group of order 0");
    }
    std::vector<std::vector<element_type>> table(order, std::vector<element_type>(order));
    std::vector<std::string>               names;
    for (unsigned a = 0; a < order; ++a) {
      names.push_back(a == 0 ? std::string("e") : "c^" + std::to_string(a));
      for (unsigned b = 0; b < order; ++b) {
        table[a][b] = (a + b) % order;
      }
    }
    return FiniteGroupTable(std::move(table), std::move(names),
                            "C" + std::to_string(order));
  }

  std::string FiniteGroupTable::to_json() const {
    nlohmann::ordered_json j;
    j["order"] = order();
    j["table"] = _table;
    j["names"] = _names;
    return j.dump();
  }

}  // namespace wordmaps
