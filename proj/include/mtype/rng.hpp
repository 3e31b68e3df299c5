#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mtype {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic draw stream.  mt19937_64 output is pinned by the standard;
// the bounded draws below avoid std::uniform_*_distribution, whose results
// are implementation-defined.  (seed, stream) pairs give independent
// substreams, so parallel instance generation stays reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s);
    s = mixed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
    gen_.seed(splitmix64(s));
  }

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0, n); rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = gen_();
      if (x >= limit) return x % n;
    }
  }

  // Uniform integer in [lo, hi], inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double exponential() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return -std::log(u);
  }

  bool coin() { return (gen_() >> 63) != 0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace mtype
