#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace psi {

// splitmix64 finalizer; used to fold stream labels into seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic random stream. All draws are defined in terms of the
// standard-specified mt19937_64 output sequence plus fixed arithmetic, so
// results are reproducible across compilers and standard libraries
// (std::normal_distribution et al. are deliberately avoided).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derives an independent stream from a root seed and a label path,
    // e.g. stream(sim_seed, {'A', group, index}).
    static Rng stream(std::uint64_t root, std::initializer_list<std::uint64_t> labels) {
        std::uint64_t acc = mix64(root);
        for (std::uint64_t l : labels) acc = mix64(acc ^ l);
        return Rng(acc);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); n >= 1.
    int uniform_int(int n) {
        int v = static_cast<int>(unit() * n);
        return v >= n ? n - 1 : v;
    }

    bool bernoulli(double p) { return unit() < p; }

    // Box-Muller; one fresh pair of uniforms per draw, spare discarded.
    double normal(double mu, double sigma) {
        double u1 = 1.0 - unit();  // (0, 1]
        double u2 = unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mu + sigma * r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace psi
