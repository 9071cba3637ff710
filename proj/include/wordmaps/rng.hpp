#ifndef WORDMAPS_RNG_HPP_
#define WORDMAPS_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace wordmaps {

  // Seed -> stream contract (stable across versions):
  //
  //   engine seed = mix64(seed + 0x9E3779B97F4A7C15 * (stream + 1))
  //   engine      = std::mt19937_64 (fully specified by the standard)
  //   below(n)    = rejection sampling on raw 64-bit outputs, rejecting
  //                 values below 2^64 mod n, then taking the value mod n
  //   shuffle     = Fisher-Yates from the last index down, j = below(i + 1)
  //
  // std::uniform_int_distribution is deliberately not used: its output is
  // implementation defined.
  constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  class Rng {
   public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : _engine(mix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    std::uint64_t next() {
      return _engine();
    }

    // Uniform on [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) {
      std::uint64_t const threshold = (0 - n) % n;  // 2^64 mod n
      std::uint64_t       x;
      do {
        x = _engine();
      } while (x < threshold);
      return x % n;
    }

    template <typename T>
    void shuffle(std::span<T> values) {
      for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(below(i));
        std::swap(values[i - 1], values[j]);
      }
    }

   private:
    std::mt19937_64 _engine;
  };

}  // namespace wordmaps

#endif  // WORDMAPS_RNG_HPP_
