#ifndef WORDMAPS_PERMUTATION_HPP_
#define WORDMAPS_PERMUTATION_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordmaps {

  // Cycle counts c_t of a permutation of degree N.
  struct CycleType {
    unsigned                     degree = 0;
    std::map<unsigned, unsigned> counts;  // t -> c_t, zero entries omitted

    unsigned count(unsigned t) const {
      auto it = counts.find(t);
      return it == counts.end() ? 0 : it->second;
    }

    // Parts in non-increasing order, e.g. {3, 1, 1}.
    std::vector<unsigned> partition() const;

    // "[3,1,1]"
    std::string to_string() const;

    friend bool operator==(CycleType const&, CycleType const&) = default;
  };

  // Element of S_N in one-line form on the points 0..N-1.  Printed and
  // parsed with 1-based points.
  //
  // Products apply the left factor first: (a * b)(i) = b(a(i)).  Fixed-point
  // and cycle statistics do not depend on this convention.
  class Permutation {
   public:
    using point_type = std::uint32_t;

    explicit Permutation(unsigned degree = 0);

    // Throws ArgumentError unless `images` is a bijection of 0..N-1.
    explicit Permutation(std::vector<point_type> images);

    static Permutation identity(unsigned degree) {
      return Permutation(degree);
    }

    unsigned degree() const noexcept {
      return static_cast<unsigned>(_images.size());
    }

    point_type operator()(point_type i) const noexcept {
      return _images[i];
    }

    std::span<point_type const> images() const noexcept {
      return _images;
    }

    Permutation inverse() const;

    // Iterated index jumping along each cycle; d may be negative.
    Permutation power(long long d) const;

    unsigned fixed_points() const noexcept;

    CycleType cycle_type() const;

    // Cycles of length >= 2, each starting at its smallest point, sorted by
    // smallest point.
    std::vector<std::vector<point_type>> cycles() const;

    // "(1 2 3)(4 5)", fixed points omitted, "()" for the identity.
    std::string to_string() const;

    friend bool operator==(Permutation const&, Permutation const&) = default;
    friend auto operator<=>(Permutation const&, Permutation const&) = default;

   private:
    std::vector<point_type> _images;
  };

  Permutation compose(Permutation const& a, Permutation const& b);

  inline Permutation operator*(Permutation const& a, Permutation const& b) {
    return compose(a, b);
  }

  inline Permutation power_of_permutation(Permutation const& s, long long d) {
    return s.power(d);
  }

  // Parses cycle notation with 1-based points; the degree is given
  // separately.  Throws ParseError.
  Permutation parse_cycles(std::string_view text, unsigned degree);

  // All N! permutations in lexicographic order of their one-line form; the
  // identity comes first.
  std::vector<Permutation> all_permutations(unsigned degree);

  // Partitions of n, parts non-increasing, in decreasing lexicographic order
  // ([n] first, [1,...,1] last).
  std::vector<std::vector<unsigned>> partitions_of(unsigned n);

  // n! as an unsigned 64-bit integer; throws ArgumentError beyond 20.
  std::uint64_t factorial(unsigned n);

}  // namespace wordmaps

#endif  // WORDMAPS_PERMUTATION_HPP_
