#include "wordmaps/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "wordmaps/error.hpp"

namespace wordmaps {

  std::vector<unsigned> CycleType::partition() const {
    std::vector<unsigned> parts;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
      parts.insert(parts.end(), it->second, it->first);
    }
    return parts;
  }

  std::string CycleType::to_string() const {
    std::string s = "[";
    bool        first = true;
    for (auto p : partition()) {
      if (!first) {
        s += ",";
      }
      s += std::to_string(p);
      first = false;
    }
    return s + "]";
  }

  Permutation::Permutation(unsigned degree) : _images(degree) {
    std::iota(_images.begin(), _images.end(), point_type{0});
  }

  Permutation::Permutation(std::vector<point_type> images)
      : _images(std::move(images)) {
    std::vector<bool> seen(_images.size(), false);
    for (auto x : _images) {
      if (x >= _images.size() || seen[x]) {
        throw ArgumentError("not a permutation of 0..N-1");
      }
      seen[x] = true;
    }
  }

  Permutation Permutation::inverse() const {
    std::vector<point_type> inv(_images.size());
    for (point_type i = 0; i < _images.size(); ++i) {
      inv[_images[i]] = i;
    }
    Permutation p;
    p._images = std::move(inv);
    return p;
  }

  Permutation Permutation::power(long long d) const {
    std::vector<point_type> out(_images.size());
    std::vector<bool>       done(_images.size(), false);
    std::vector<point_type> cycle;
    for (point_type start = 0; start < _images.size(); ++start) {
      if (done[start]) {
        continue;
      }
      cycle.clear();
      for (point_type x = start; !done[x]; x = _images[x]) {
        done[x] = true;
        cycle.push_back(x);
      }
      long long const len   = static_cast<long long>(cycle.size());
      long long       shift = d % len;
      if (shift < 0) {
        shift += len;
      }
      for (long long i = 0; i < len; ++i) {
        out[cycle[static_cast<std::size_t>(i)]]
            = cycle[static_cast<std::size_t>((i + shift) % len)];
      }
    }
    Permutation p;
    p._images = std::move(out);
    return p;
  }

  unsigned Permutation::fixed_points() const noexcept {
    unsigned n = 0;
    for (point_type i = 0; i < _images.size(); ++i) {
      n += _images[i] == i ? 1 : 0;
    }
    return n;
  }

  CycleType Permutation::cycle_type() const {
    CycleType         ct;
    ct.degree = degree();
    std::vector<bool> done(_images.size(), false);
    for (point_type start = 0; start < _images.size(); ++start) {
      if (done[start]) {
        continue;
      }
      unsigned len = 0;
      for (point_type x = start; !done[x]; x = _images[x]) {
        done[x] = true;
        ++len;
      }
      ++ct.counts[len];
    }
    return ct;
  }

  std::vector<std::vector<Permutation::point_type>> Permutation::cycles() const {
    std::vector<std::vector<point_type>> result;
    std::vector<bool>                    done(_images.size(), false);
    for (point_type start = 0; start < _images.size(); ++start) {
      if (done[start] || _images[start] == start) {
        continue;
      }
      std::vector<point_type> c;
      for (point_type x = start; !done[x]; x = _images[x]) {
        done[x] = true;
        c.push_back(x);
      }
      result.push_back(std::move(c));
    }
    return result;
  }

  std::string Permutation::to_string() const {
    auto cs = cycles();
    if (cs.empty()) {
      return "()";
    }
    std::string s;
    for (auto const& c : cs) {
      s += "(";
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) {
          s += " ";
        }
        s += std::to_string(c[i] + 1);
      }
      s += ")";
    }
    return s;
  }

  Permutation compose(Permutation const& a, Permutation const& b) {
    if (a.degree() != b.degree()) {
      throw ArgumentError("compose: degrees differ");
    }
    std::vector<Permutation::point_type> out(a.degree());
    for (Permutation::point_type i = 0; i < a.degree(); ++i) {
      out[i] = b(a(i));
    }
    return Permutation(std::move(out));
  }

  Permutation parse_cycles(std::string_view text, unsigned degree) {
    std::vector<Permutation::point_type> images(degree);
    std::iota(images.begin(), images.end(), Permutation::point_type{0});
    std::vector<bool> used(degree, false);
    std::size_t       pos = 0;
    auto skip = [&] {
      while (pos < text.size()
             && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    skip();
    while (pos < text.size()) {
      if (text[pos] != '(') {
        throw ParseError("expected '('", pos);
      }
      ++pos;
      std::vector<Permutation::point_type> cycle;
      while (true) {
        skip();
        if (pos >= text.size()) {
          throw ParseError("unterminated cycle", pos);
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        std::size_t   start = pos;
        unsigned long value = 0;
        while (pos < text.size()
               && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          value = value * 10 + static_cast<unsigned long>(text[pos] - '0');
          if (value > degree) {
            throw ParseError("point exceeds the degree "
                                 + std::to_string(degree),
                             start);
          }
          ++pos;
        }
        if (pos == start) {
          throw ParseError("expected a point", pos);
        }
        if (value == 0) {
          throw ParseError("points are 1-based", start);
        }
        auto p = static_cast<Permutation::point_type>(value - 1);
        if (used[p]) {
          throw ParseError("point " + std::to_string(value) + " repeated",
                           start);
        }
        used[p] = true;
        cycle.push_back(p);
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        images[cycle[i]] = cycle[(i + 1) % cycle.size()];
      }
      skip();
    }
    return Permutation(std::move(images));
  }

  std::vector<Permutation> all_permutations(unsigned degree) {
    std::vector<Permutation>             result;
    std::vector<Permutation::point_type> p(degree);
    std::iota(p.begin(), p.end(), Permutation::point_type{0});
    result.reserve(factorial(degree));
    do {
      result.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return result;
  }

  namespace {
    void partitions_rec(unsigned                            remaining,
                        unsigned                            largest,
                        std::vector<unsigned>&              current,
                        std::vector<std::vector<unsigned>>& out) {
      if (remaining == 0) {
        out.push_back(current);
        return;
      }
      for (unsigned p = std::min(remaining, largest); p >= 1; --p) {
        current.push_back(p);
        partitions_rec(remaining - p, p, current, out);
        current.pop_back();
      }
    }
  }  // namespace

  std::vector<std::vector<unsigned>> partitions_of(unsigned n) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned>              current;
    partitions_rec(n, n, current, out);
    return out;
  }

  std::uint64_t factorial(unsigned n) {
    if (n > 20) {
      throw ArgumentError("factorial: " + std::to_string(n)
                          + "! does not fit in 64 bits");
    }
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i) {
      f *= i;
    }
    return f;
  }

}  // namespace wordmaps
