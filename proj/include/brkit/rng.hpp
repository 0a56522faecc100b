#ifndef BRKIT_RNG_HPP
#define BRKIT_RNG_HPP

#include <cstdint>

namespace brkit {

// SplitMix64. Small, seedable, and stable across platforms, so seeded runs
// reproduce bit-for-bit regardless of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound >= 1, by rejection
    std::uint64_t uniform(std::uint64_t bound) {
        if (bound <= 1)
            return 0;
        std::uint64_t limit = ~0ULL - (~0ULL % bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    // derive an independent stream for a subtask
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
        Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
        return r.next();
    }

private:
    std::uint64_t state_;
};

} // namespace brkit

#endif
