#pragma once

#include <cstdint>

namespace qpt {

// Counter-based generator: every output is a pure function of
// (seed, stream, counter), so results never depend on how work is
// split across threads. Finalizer is the splitmix64 mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::uint64_t bits(std::uint64_t counter) const {
        std::uint64_t z = mix64(seed ^ 0x6a09e667f3bcc908ULL);
        z = mix64(z ^ (stream + 0xbb67ae8584caa73bULL));
        return mix64(z ^ (counter + 0x3c6ef372fe94f82bULL));
    }

    // uniform in [0, 1)
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }
};

}  // namespace qpt
