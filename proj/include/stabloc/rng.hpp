#pragma once

// Counter-based splittable RNG (SplitMix64). Every draw is a pure function
// of (seed, counter), so any random outcome is reproducible from the seed
// and the index of the call that produced it.

#include <cstdint>

namespace stabloc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64() {
        return splitmix64(seed_ ^ splitmix64(stream_ ^ splitmix64(counter_++)));
    }
    bool next_bit() { return next_u64() & 1u; }
    // Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

    CounterRng split(std::uint64_t substream) const {
        return CounterRng(seed_, splitmix64(stream_ ^ substream));
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace stabloc
