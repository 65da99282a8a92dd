#pragma once

#include <cstdint>
#include <random>

namespace qjoin {

/// Deterministic random source. mt19937_64 output is pinned by the standard,
/// and all derived draws below avoid std distributions (whose outputs may
/// differ between library implementations), so a fixed seed reproduces the
/// same stream on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    /// Uniform draw in [0, n) by rejection; n must be positive.
    uint64_t below(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (eng_() & 1) != 0; }

private:
    std::mt19937_64 eng_;
};

}  // namespace qjoin
