#ifndef MUTSEL_RNG_HPP
#define MUTSEL_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace mutsel {

// SplitMix64 step: advances *state and returns a mixed output. Used for
// seeding and for deriving replicate streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream derivation: the seed of stream `index` under a master
// seed depends only on the pair (master, index), never on call order, so
// replicates are schedule-independent and individually reproducible.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t x = master ^ (0xd1342543de82ef95ULL * (index + 0x632be59bd9b4e019ULL));
  return splitmix64(x);
}

// xoshiro256++ (Blackman & Vigna). Small state, fast init, passes BigCrush;
// state is filled from SplitMix64 as its authors recommend.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
  std::array<std::uint64_t, 4> s_;
};

// Uniform on [0,1) with 53 random bits. Draws are hand-rolled rather than
// delegated to <random> distributions so streams are identical across
// standard libraries.
inline double uniform_unit(Xoshiro256pp& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline double exponential(Xoshiro256pp& g, double rate) {
  return -std::log1p(-uniform_unit(g)) / rate;
}

inline bool bernoulli(Xoshiro256pp& g, double prob) { return uniform_unit(g) < prob; }

// Uniform on {1, ..., n}, n >= 1. Multiply-shift; bias is O(n * 2^-64).
inline std::int64_t uniform_level(Xoshiro256pp& g, std::int64_t n) {
  const auto wide = static_cast<unsigned __int128>(g()) * static_cast<unsigned __int128>(n);
  return 1 + static_cast<std::int64_t>(wide >> 64);
}

}  // namespace mutsel

#endif
