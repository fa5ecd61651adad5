#pragma once

// Seeded generators. Every stochastic operation takes an explicit 64-bit seed;
// independent streams are derived with splitmix64 so results never depend on
// evaluation order.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace varunc {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of sub-stream `index` under `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Rng(seq);
}

/// One draw from Dirichlet(alpha) via normalized Gamma variates.
template <typename Gen>
std::vector<double> draw_dirichlet(std::span<const double> alpha, Gen& gen) {
    std::vector<double> x(alpha.size());
    double sum = 0.0;
    do {
        sum = 0.0;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            std::gamma_distribution<double> gamma(alpha[k], 1.0);
            x[k] = gamma(gen);
            sum += x[k];
        }
    } while (!(sum > 0.0));
    for (double& v : x) v /= sum;
    return x;
}

/// Gaussian direction projected onto the sum-zero plane; never the zero vector.
template <typename Gen>
std::vector<double> draw_sum_zero_direction(std::size_t dim, Gen& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> d(dim);
    for (;;) {
        double mean = 0.0;
        for (double& v : d) {
            v = normal(gen);
            mean += v;
        }
        mean /= static_cast<double>(dim);
        double norm2 = 0.0;
        for (double& v : d) {
            v -= mean;
            norm2 += v * v;
        }
        if (norm2 > 1e-12) return d;
    }
}

}  // namespace varunc
