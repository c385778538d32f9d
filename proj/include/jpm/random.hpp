#pragma once

// Seeded, platform-independent random numbers for experiments.
//
// std::mt19937_64 has a fully specified output sequence; the standard
// distributions do not, so bounded integers use Lemire's multiply-shift
// rejection method on the raw 64-bit output. Independent streams are
// derived from (seed, stream id) with the splitmix64 finalizer.

#include <cstdint>
#include <random>

namespace jpm {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class rng {
  public:
    explicit rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    rng(std::uint64_t seed, std::uint64_t stream)
        : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ull))) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 prod = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(prod);
        if (low < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                prod = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(prod);
            }
        }
        return static_cast<std::uint64_t>(prod >> 64);
    }

    // Uniform in [lo, hi]; lo <= hi.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace jpm
