#pragma once

#include <cstdint>
#include <vector>

namespace nfpt {

// splitmix64 step; also used as the 64-bit mixing hash for seed derivation.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Per-instance seed derivation: mix(master, index) = splitmix64(splitmix64(master) ^ splitmix64(index + C)).
// Stated explicitly so experiment streams are reconstructible from the master seed alone.
inline uint64_t mix_seed(uint64_t master, uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x51ed2701a9e53a1bull));
}

inline uint64_t mix_seed(uint64_t master, uint64_t a, uint64_t b) {
    return mix_seed(mix_seed(master, a), b);
}

// xoshiro256** seeded via splitmix64. Bounded draws use Lemire rejection, and
// doubles take the top 53 bits, so streams are identical across platforms and
// standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& s : state_) {
            x = splitmix64(x);
            s = x;
        }
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, bound). bound must be > 0.
    uint64_t uniform_u64(uint64_t bound) {
        unsigned __int128 r = (unsigned __int128)next_u64() * bound;
        uint64_t lo = (uint64_t)r;
        if (lo < bound) {
            const uint64_t t = (0 - bound) % bound;
            while (lo < t) {
                r = (unsigned __int128)next_u64() * bound;
                lo = (uint64_t)r;
            }
        }
        return (uint64_t)(r >> 64);
    }

    // Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return lo + (int)uniform_u64((uint64_t)(hi - lo) + 1);
    }

    // Uniform in [0, 1).
    double uniform_double() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_double() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = (size_t)uniform_u64(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        shuffle(p);
        return p;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t state_[4];
};

}  // namespace nfpt
