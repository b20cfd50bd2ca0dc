#pragma once

#include <cstdint>
#include <string>

namespace rspr {

// splitmix64, used for seeding and for deriving independent substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// xoshiro256** with splitmix64 seeding. Self-contained so that streams are
// reproducible byte-for-byte across platforms and standard libraries; the
// std:: distributions carry no such guarantee.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased integer in [0, bound); rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // True with probability num/den, exactly.
  bool bernoulli(std::uint64_t num, std::uint64_t den) {
    if (num >= den) return true;
    return below(den) < num;
  }

  double unit() { return (next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Deterministic substream: master seed + a textual stream key + an index.
inline Rng derive_rng(std::uint64_t master, const std::string& key, std::uint64_t index) {
  std::uint64_t sm = master ^ (0x632be59bd9b4e019ULL + fnv1a64(key));
  std::uint64_t a = splitmix64(sm);
  sm ^= index * 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(sm);
  return Rng(a ^ (b + 0x165667b19e3779f9ULL));
}

}  // namespace rspr
