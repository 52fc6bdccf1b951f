#pragma once

#include <cstdint>
#include <string>

namespace pcw {

// Deterministic stream generator. The core is splitmix64 (Steele, Lea &
// Flood 2014, public-domain reference constants); identical seeds reproduce
// identical streams on every platform. Protocol and campaign code never
// shares one Rng across workers: use fork() to derive an independent,
// reproducible child stream.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw from [0, bound) via rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~0ULL) / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    // Inclusive range [lo, hi].
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next_u64() & 1ULL) != 0; }
    int sign() { return coin() ? 1 : -1; }

    // Independent child stream; deterministic in (parent seed, draws so far,
    // label).
    Rng fork(std::uint64_t label) {
        std::uint64_t s = next_u64() ^ (0x632be59bd9b4e019ULL * (label + 1));
        return Rng(s);
    }

    std::uint64_t seed_state() const { return state_; }

  private:
    std::uint64_t state_;
};

}  // namespace pcw
