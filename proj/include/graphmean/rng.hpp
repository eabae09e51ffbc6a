#pragma once

#include <cstdint>

namespace graphmean {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen because the whole state is one
// 64-bit word, the constants are published, and the output sequence is
// identical on every platform. All randomness in the library flows through
// this generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0,1) with 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Avalanche mix used to derive per-replica seeds: replica k of a run seeded
// with s uses mix64(s ^ k). Results are therefore independent of how replicas
// are scheduled across threads.
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica_index) {
    return mix64(seed ^ replica_index);
}

// Samples geometric gaps (number of failures before the next success of a
// Bernoulli(p) sequence) by inverting the CDF with binary lifting over
// precomputed powers q^(2^r), q = 1-p. Only IEEE multiplications are used,
// so the sampled skip sequence is bit-identical across platforms; no libm
// call is involved.
class GeometricSkip {
public:
    explicit GeometricSkip(double p) {
        double q = 1.0 - p;
        pw2_[0] = q;
        for (int r = 1; r < kBits; ++r) pw2_[r] = pw2_[r - 1] * pw2_[r - 1];
    }

    // Smallest g >= 0 with q^(g+1) <= v for v in (0,1]; the gap before the
    // next included edge. Saturates at 2^62 when the gap is astronomically
    // large (caller clamps against the number of remaining slots).
    std::uint64_t gap_for(double v) const {
        if (pw2_[0] <= v) return 0;
        // Exponential search: smallest k with q^(2^k) <= v brackets the
        // largest j with q^j > v inside [2^(k-1), 2^k).
        int k = 1;
        while (k < kBits && pw2_[k] > v) ++k;
        if (k == kBits) return std::uint64_t{1} << kBits; // astronomically sparse
        std::uint64_t j = std::uint64_t{1} << (k - 1);
        double prod = pw2_[k - 1];
        for (int r = k - 2; r >= 0; --r) {
            double cand = prod * pw2_[r];
            if (cand > v) {
                prod = cand;
                j |= (std::uint64_t{1} << r);
            }
        }
        return j; // minimal exponent q^(j+1) <= v, so gap = (j+1) - 1
    }

    std::uint64_t next_gap(SplitMix64& rng) const {
        // v = (u+1)/2^64 lies in (0,1], avoiding v = 0.
        double v = (static_cast<double>(rng.next() >> 11) + 1.0) * 0x1.0p-53;
        return gap_for(v);
    }

private:
    static constexpr int kBits = 62;
    double pw2_[kBits];
};

} // namespace graphmean
