#ifndef WORDMAPS_GROUP_TABLE_HPP_
#define WORDMAPS_GROUP_TABLE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wordmaps {

  // A finite group given by its multiplication table, identity at index 0.
  class FiniteGroupTable {
   public:
    using element_type = std::uint32_t;

    // Validates closure, the identity at 0, inverses and associativity, and
    // throws ArgumentError describing the first violation found.
    explicit FiniteGroupTable(std::vector<std::vector<element_type>> table,
                              std::vector<std::string> names = {},
                              std::string              label = "");

    // { "order": n, "table": [[...]], "names": [...] }; names optional.
    // Throws ParseError on malformed JSON or shape, ArgumentError on a
    // failed axiom.
    static FiniteGroupTable from_json(std::string_view text,
                                      std::string      label = "");
    static FiniteGroupTable load(std::filesystem::path const& path);

    // S_N with elements in lexicographic one-line order; degree <= 5.
    static FiniteGroupTable symmetric(unsigned degree);
    static FiniteGroupTable cyclic(unsigned order);

    std::size_t order() const noexcept {
      return _table.size();
    }

    element_type multiply(element_type a, element_type b) const noexcept {
      return _table[a][b];
    }

    element_type inverse(element_type a) const noexcept {
      return _inverse[a];
    }

    std::string const& name(element_type a) const {
      return _names[a];
    }

    std::string const& label() const noexcept {
      return _label;
    }

    // Conjugacy classes, each sorted, ordered by smallest element (so the
    // identity class comes first).
    std::vector<std::vector<element_type>> const& classes() const noexcept {
      return _classes;
    }

    std::size_t class_of(element_type a) const noexcept {
      return _class_of[a];
    }

    // Name of the smallest element of the class.
    std::string const& class_label(std::size_t c) const {
      return _names[_classes[c].front()];
    }

    std::string to_json() const;

   private:
    std::vector<std::vector<element_type>> _table;
    std::vector<element_type>              _inverse;
    std::vector<std::string>               _names;
    std::string                            _label;
    std::vector<std::vector<element_type>> _classes;
    std::vector<std::size_t>               _class_of;
  };

}  // namespace wordmaps

#endif  // WORDMAPS_GROUP_TABLE_HPP_
