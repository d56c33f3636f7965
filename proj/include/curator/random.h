#ifndef CURATOR_RANDOM_H_
#define CURATOR_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace curator {

// Deterministic random source. Only the raw std::mt19937_64 stream is used;
// every mapping onto ranges is spelled out here so output does not depend
// on the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed): engine_(seed) { }

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n) by rejection sampling; n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) {
        return r % n;
      }
    }
  }

  int between(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return uniform() < p; }

  // Standard normal via Box-Muller (one draw per call).
  double normal();

  template <class T>
  const T &pick(const std::vector<T> &items) {
    return items[below(items.size())];
  }

  template <class T>
  void shuffle(std::vector<T> &items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

std::uint64_t fnv1a64(std::string_view bytes);

// Seed for a keyed sub-stream, e.g. one shuffle per domain.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);

}  // namespace curator

#endif  // CURATOR_RANDOM_H_
