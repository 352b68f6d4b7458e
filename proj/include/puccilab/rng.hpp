#pragma once

#include <cstdint>
#include <cmath>

namespace puccilab {

// splitmix64: counter-addressable, so parallel consumers stay reproducible.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t bits = splitmix64(splitmix64(seed) ^ (index * 0xd1342543de82ef95ULL + 1));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential convenience wrapper; avoids std::uniform_real_distribution,
// whose output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    double uniform() { return uniform01(seed_, counter_++); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(
                        splitmix64(splitmix64(seed_) ^ (counter_++ * 0xd1342543de82ef95ULL + 1)) % span);
    }

    double normal() {
        // Box-Muller on our own uniforms keeps the stream portable.
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace puccilab
