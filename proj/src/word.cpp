#include "wordmaps/word.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <utility>

#include "wordmaps/error.hpp"

namespace wordmaps {

  namespace {

    // Upper bound on the expanded length of a parsed word.
    constexpr std::size_t max_parsed_length = 10'000'000;

    void push_reduced(std::vector<letter_type>& out, letter_type l) {
      if (!out.empty() && out.back() == -l) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }

    std::vector<letter_type> inverse_letters(std::span<letter_type const> w) {
      std::vector<letter_type> out(w.rbegin(), w.rend());
      for (auto& l : out) {
        l = -l;
      }
      return out;
    }

    void append_power(std::vector<letter_type>&     out,
                      std::span<letter_type const> base,
                      long long                    exponent) {
      if (exponent == 0 || base.empty()) {
        return;
      }
      std::vector<letter_type> unit;
      if (exponent > 0) {
        unit.assign(base.begin(), base.end());
      } else {
        unit = inverse_letters(base);
      }
      unsigned long long times = exponent > 0
                                     ? static_cast<unsigned long long>(exponent)
                                     : 0ULL - static_cast<unsigned long long>(exponent);
      for (unsigned long long k = 0; k < times; ++k) {
        for (auto l : unit) {
          push_reduced(out, l);
        }
      }
    }

    class Parser {
     public:
      explicit Parser(std::string_view text) : _text(text), _pos(0) {}

      std::vector<letter_type> parse_all() {
        skip_ws();
        std::vector<letter_type> result;
        if (_pos == _text.size()) {
          return result;
        }
        result = parse_word();
        skip_ws();
        if (_pos != _text.size()) {
          throw ParseError(std::string("unexpected character '")
                               + _text[_pos] + "'",
                           _pos);
        }
        return result;
      }

      unsigned max_generator() const noexcept {
        return _max_generator;
      }

      std::size_t max_generator_position() const noexcept {
        return _max_generator_pos;
      }

     private:
      void skip_ws() {
        while (_pos < _text.size()
               && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }

      bool at_term_start() {
        skip_ws();
        if (_pos >= _text.size()) {
          return false;
        }
        char c = _text[_pos];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '('
               || c == '[' || c == '1';
      }

      std::vector<letter_type> parse_word() {
        if (!at_term_start()) {
          throw ParseError("expected a letter, '(', '[' or '1'", _pos);
        }
        std::vector<letter_type> out;
        while (at_term_start()) {
          auto term = parse_term();
          for (auto l : term) {
            push_reduced(out, l);
          }
          check_length(out.size());
        }
        return out;
      }

      std::vector<letter_type> parse_term() {
        auto atom = parse_atom();
        skip_ws();
        if (_pos < _text.size() && _text[_pos] == '^') {
          ++_pos;
          long long e = parse_int();
          if (!atom.empty()
              && static_cast<unsigned long long>(e < 0 ? -e : e)
                     > max_parsed_length / atom.size()) {
            throw ParseError("exponent overflow", _pos);
          }
          std::vector<letter_type> out;
          append_power(out, atom, e);
          return out;
        }
        return atom;
      }

      std::vector<letter_type> parse_atom() {
        skip_ws();
        char c = _text[_pos];
        if (c == '1') {
          ++_pos;
          return {};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
          unsigned index = static_cast<unsigned>(
              std::tolower(static_cast<unsigned char>(c)) - 'a' + 1);
          if (index > max_rank) {
            throw ParseError("invalid letter", _pos);
          }
          if (index > _max_generator) {
            _max_generator     = index;
            _max_generator_pos = _pos;
          }
          ++_pos;
          letter_type l = static_cast<letter_type>(index);
          return {std::isupper(static_cast<unsigned char>(c)) ? -l : l};
        }
        if (c == '(') {
          ++_pos;
          auto inner = parse_word();
          expect(')');
          return inner;
        }
        if (c == '[') {
          ++_pos;
          auto u = parse_word();
          expect(',');
          auto v = parse_word();
          expect(']');
          std::vector<letter_type> out;
          for (auto l : u) {
            push_reduced(out, l);
          }
          for (auto l : v) {
            push_reduced(out, l);
          }
          for (auto l : inverse_letters(u)) {
            push_reduced(out, l);
          }
          for (auto l : inverse_letters(v)) {
            push_reduced(out, l);
          }
          return out;
        }
        throw ParseError(std::string("unexpected character '") + c + "'",
                         _pos);
      }

      long long parse_int() {
        skip_ws();
        bool negative = false;
        if (_pos < _text.size() && _text[_pos] == '-') {
          negative = true;
          ++_pos;
        }
        std::size_t start = _pos;
        long long   value = 0;
        while (_pos < _text.size()
               && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
          if (value > static_cast<long long>(max_parsed_length)) {
            throw ParseError("exponent overflow", start);
          }
          value = value * 10 + (_text[_pos] - '0');
          ++_pos;
        }
        if (_pos == start) {
          throw ParseError("expected an integer exponent", _pos);
        }
        if (value > static_cast<long long>(max_parsed_length)) {
          throw ParseError("exponent overflow", start);
        }
        return negative ? -value : value;
      }

      void expect(char c) {
        skip_ws();
        if (_pos >= _text.size() || _text[_pos] != c) {
          throw ParseError(std::string("expected '") + c + "'", _pos);
        }
        ++_pos;
      }

      void check_length(std::size_t n) const {
        if (n > max_parsed_length) {
          throw ParseError("word too long", _pos);
        }
      }

      std::string_view _text;
      std::size_t      _pos;
      unsigned         _max_generator     = 0;
      std::size_t      _max_generator_pos = 0;
    };

  }  // namespace

  Word::Word(std::vector<letter_type> letters, unsigned rank)
      : _letters(), _rank(rank) {
    if (rank == 0 || rank > max_rank) {
      throw ArgumentError("ambient rank must lie in [1, 26], got "
                          + std::to_string(rank));
    }
    _letters.reserve(letters.size());
    for (auto l : letters) {
      if (l == 0 || generator_of(l) > rank) {
        throw ArgumentError("letter " + std::to_string(l)
                            + " outside ambient rank "
                            + std::to_string(rank));
      }
      push_reduced(_letters, l);
    }
  }

  Word Word::generator(unsigned index, unsigned rank) {
    return Word({static_cast<letter_type>(index)}, rank);
  }

  unsigned Word::max_generator() const noexcept {
    unsigned m = 0;
    for (auto l : _letters) {
      m = std::max(m, generator_of(l));
    }
    return m;
  }

  Word Word::with_rank(unsigned rank) const {
    return Word(_letters, rank);
  }

  char letter_char(letter_type l) {
    char c = static_cast<char>('a' + generator_of(l) - 1);
    return l < 0 ? static_cast<char>(std::toupper(c)) : c;
  }

  std::string Word::to_string() const {
    if (_letters.empty()) {
      return "1";
    }
    std::string out;
    out.reserve(_letters.size());
    for (auto l : _letters) {
      out.push_back(letter_char(l));
    }
    return out;
  }

  Word parse_word(std::string_view text, std::optional<unsigned> rank) {
    Parser p(text);
    auto   letters = p.parse_all();
    if (rank) {
      if (*rank == 0 || *rank > max_rank) {
        throw ParseError("declared rank must lie in [1, 26]");
      }
      if (p.max_generator() > *rank) {
        throw ParseError("generator index " + std::to_string(p.max_generator())
                             + " exceeds declared rank "
                             + std::to_string(*rank),
                         p.max_generator_position());
      }
    }
    unsigned r = rank ? *rank : std::max(1u, p.max_generator());
    return Word(std::move(letters), r);
  }

  Word multiply(Word const& a, Word const& b) {
    std::vector<letter_type> out(a.letters().begin(), a.letters().end());
    for (auto l : b.letters()) {
      push_reduced(out, l);
    }
    return Word(std::move(out), std::max(a.rank(), b.rank()));
  }

  Word invert(Word const& a) {
    return Word(inverse_letters(a.letters()), a.rank());
  }

  Word power(Word const& a, long long exponent) {
    std::vector<letter_type> out;
    append_power(out, a.letters(), exponent);
    return Word(std::move(out), a.rank());
  }

  Word commutator(Word const& a, Word const& b) {
    return a * b * invert(a) * invert(b);
  }

  CyclicReduction cyclic_reduce(Word const& w) {
    auto        letters = w.letters();
    std::size_t i = 0, j = letters.size();
    while (j - i >= 2 && letters[i] == -letters[j - 1]) {
      ++i;
      --j;
    }
    return {Word(std::vector<letter_type>(letters.begin() + i,
                                          letters.begin() + j),
                 w.rank()),
            Word(std::vector<letter_type>(letters.begin(), letters.begin() + i),
                 w.rank())};
  }

  Word substitute(Word const& w, std::span<Word const> images) {
    if (w.rank() != images.size()) {
      throw ArgumentError("substitute: word has rank "
                          + std::to_string(w.rank()) + " but "
                          + std::to_string(images.size())
                          + " images were given");
    }
    if (images.empty()) {
      throw ArgumentError("substitute: no images");
    }
    unsigned r = images.front().rank();
    for (auto const& img : images) {
      if (img.rank() != r) {
        throw ArgumentError("substitute: images must share an ambient rank");
      }
    }
    std::vector<std::vector<letter_type>> inverses;
    inverses.reserve(images.size());
    for (auto const& img : images) {
      inverses.push_back(inverse_letters(img.letters()));
    }
    std::vector<letter_type> out;
    for (auto l : w.letters()) {
      std::size_t g = generator_of(l) - 1;
      if (l > 0) {
        for (auto m : images[g].letters()) {
          push_reduced(out, m);
        }
      } else {
        for (auto m : inverses[g]) {
          push_reduced(out, m);
        }
      }
    }
    return Word(std::move(out), r);
  }

  Root maximal_root(Word const& w) {
    if (w.is_identity()) {
      throw ArgumentError("maximal_root: the identity has no maximal root");
    }
    auto [core, conj] = cyclic_reduce(w);
    auto c            = core.letters();
    std::size_t n     = c.size();

    // Smallest p >= 1 at which core occurs in core+core; this is the smallest
    // rotation period and always divides n.
    std::vector<std::size_t> fail(n + 1, 0);
    for (std::size_t i = 1, k = 0; i < n; ++i) {
      while (k > 0 && c[i] != c[k]) {
        k = fail[k];
      }
      if (c[i] == c[k]) {
        ++k;
      }
      fail[i + 1] = k;
    }
    std::size_t period = n;
    for (std::size_t i = 1, k = 0; i < 2 * n; ++i) {
      letter_type x = c[i % n];
      while (k > 0 && x != c[k]) {
        k = fail[k];
      }
      if (x == c[k]) {
        ++k;
      }
      if (k == n) {
        period = i + 1 - n;
        break;
      }
    }
    Word base(std::vector<letter_type>(c.begin(), c.begin() + period),
              w.rank());
    return {conj * base * invert(conj), static_cast<unsigned>(n / period)};
  }

  bool is_dth_power_in_free(Word const& w, unsigned d) {
    if (d == 0) {
      return w.is_identity();
    }
    if (w.is_identity() || d == 1) {
      return true;
    }
    return maximal_root(w).exponent % d == 0;
  }

  std::vector<unsigned> used_generators(std::span<Word const> words) {
    std::vector<unsigned> used;
    for (auto const& w : words) {
      for (auto l : w.letters()) {
        used.push_back(generator_of(l));
      }
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    return used;
  }

  std::vector<Word> compact(std::span<Word const> words) {
    auto const used = used_generators(words);
    std::vector<letter_type> relabel(max_rank + 1, 0);
    for (std::size_t i = 0; i < used.size(); ++i) {
      relabel[used[i]] = static_cast<letter_type>(i + 1);
    }
    unsigned const    m = std::max<unsigned>(1, static_cast<unsigned>(used.size()));
    std::vector<Word> result;
    result.reserve(words.size());
    for (auto const& w : words) {
      std::vector<letter_type> letters;
      letters.reserve(w.length());
      for (auto l : w.letters()) {
        letter_type g = relabel[generator_of(l)];
        letters.push_back(l > 0 ? g : -g);
      }
      result.emplace_back(std::move(letters), m);
    }
    return result;
  }

}  // namespace wordmaps
