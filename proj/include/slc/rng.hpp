#pragma once

#include <cstdint>

namespace slc {

// Counter-based splittable pseudo-random generator.
//
// Every value is a pure function of (key, counter), so a generator state is two
// 64-bit words and runs are reproducible bit-for-bit from a seed. Child streams
// are derived by mixing a stream id into the key; estimates indexed by j draw
// from stream(phase, j) and therefore do not depend on evaluation order.
class Rng {
public:
    explicit Rng(uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)), counter_(0) {}

    // Derives an independent child stream. Deterministic in (parent key, id);
    // the parent's counter position is irrelevant.
    [[nodiscard]] Rng stream(uint64_t id) const {
        return Rng(key_, id);
    }
    [[nodiscard]] Rng stream(uint64_t a, uint64_t b) const {
        return stream(a).stream(b);
    }

    uint64_t next_u64() {
        return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull);
    }

    // Uniform integer in [0, bound), bound >= 1. Lemire multiply-shift with the
    // standard rejection step, so the result is exactly uniform.
    uint64_t uniform(uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto lo = static_cast<uint64_t>(m);
        if (lo < bound) {
            const uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform_real() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Fair coin: true = heads.
    bool coin() {
        return (next_u64() & 1ull) != 0;
    }

private:
    Rng(uint64_t parent_key, uint64_t id)
        : key_(mix(parent_key ^ mix(id + 0x632be59bd9b4e019ull))), counter_(0) {}

    // splitmix64 finalizer: an invertible mix with full avalanche.
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    uint64_t key_;
    uint64_t counter_;
};

} // namespace slc
