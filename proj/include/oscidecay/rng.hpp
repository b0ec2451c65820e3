// Deterministic, splittable random source. Streams are derived by hashing
// (seed, index...) so parallel and serial runs draw identical values; no
// standard-library distributions are used anywhere, to keep output
// bit-reproducible across standard libraries.

#ifndef OSCIDECAY_RNG_HPP
#define OSCIDECAY_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace oscidecay {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_stream(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

    Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream)
        : Rng(hash_stream({seed, hash_stream(stream)})) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive.
    long long uniform_int(long long lo, long long hi) {
        const std::uint64_t span = (std::uint64_t)(hi - lo) + 1;
        return lo + (long long)(next() % span);
    }

private:
    std::uint64_t state_;
};

}  // namespace oscidecay

#endif
