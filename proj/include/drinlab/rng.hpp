#pragma once

#include <cstdint>

namespace drinlab {

/// Small deterministic PRNG (splitmix64).  Every simulation draws through one
/// of these, seeded explicitly, so reports are reproducible bit for bit on any
/// platform.  Child streams for independent work items are derived from the
/// master seed and the item index, which makes results independent of how the
/// work is split across workers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw from {0, 1, ..., bound-1}, bound >= 1.  Rejection keeps
    /// the distribution exactly uniform.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = ~0ULL - (~0ULL % bound) - 1;
        std::uint64_t v = next();
        while (v > limit) v = next();
        return v % bound;
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Deterministic child seed for work item `index` of stream `stream`.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t stream,
                                std::uint64_t index) {
    Rng mix(master ^ (0xd1b54a32d192ed03ULL * (stream + 1)) ^
            (0x9e3779b97f4a7c15ULL * (index + 1)));
    mix.next();
    return mix.next();
}

} // namespace drinlab
