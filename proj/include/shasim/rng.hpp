#ifndef SHASIM_RNG_HPP_
#define SHASIM_RNG_HPP_

#include <cstdint>

namespace shasim {

// ============================================================================
// Rng — substream random generator.
//
// Each (master seed, stream id) pair yields an independent, reproducible
// substream: state is derived by hashing both through splitmix64, then
// advanced with xoshiro256**. Workers own disjoint stream ids, so results
// do not depend on how trajectories are distributed over threads.
// ============================================================================

class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t a = seed;
        std::uint64_t b = stream * 0x9E3779B97F4A7C15ULL + 0x6A09E667F3BCC909ULL;
        for (int i = 0; i < 4; ++i) s_[i] = splitmix(a) ^ splitmix(b);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
        // Discard a few outputs so nearby seeds decorrelate.
        for (int i = 0; i < 8; ++i) next();
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

    // Uniform draw in the open interval (0,1): safe for log() and quantiles.
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix(std::uint64_t& state) {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
};

}  // namespace shasim

#endif  // SHASIM_RNG_HPP_
