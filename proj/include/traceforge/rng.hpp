#pragma once

// counter-based splittable rng (splitmix64 core), bitwise reproducible

#include <cmath>
#include <complex>
#include <cstdint>

namespace traceforge {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int n) { return int(next_u64() % std::uint64_t(n)); }

    double gauss() {
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::complex<double> cgauss() {
        double re = gauss();
        double im = gauss();
        return {re * 0.7071067811865475244, im * 0.7071067811865475244};
    }

    // strong 64-bit combine for deriving per-item streams
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return mix(mix(a, b), c);
    }

    Rng split(std::uint64_t stream) const { return Rng(mix(state_, stream)); }

private:
    std::uint64_t state_;
};

inline std::uint64_t fnv1a(const char* s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (; *s; ++s) {
        h ^= std::uint64_t(static_cast<unsigned char>(*s));
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace traceforge
