#pragma once

// Independent references for the measures: closed-form Dirichlet moments,
// Monte Carlo estimation over seeded sample streams, lattice maximization of
// V(theta), and the Bernoulli-parameter samplers behind the figure-1 panels.

#include "varunc/error.hpp"
#include "varunc/measures.hpp"
#include "varunc/random.hpp"
#include "varunc/simplex.hpp"
#include "varunc/variance.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace varunc::oracles {

enum class SamplerFamily : std::uint8_t { UniformInterval, TruncatedGaussian, Beta, DiracMix };

/// Second-order distribution over the parameter theta of a Bernoulli variable,
/// represented through atoms (theta, 1 - theta).
struct SamplerSpec {
    SamplerFamily family = SamplerFamily::UniformInterval;
    // uniform_interval: [p1, p2]; truncated_gaussian: mu = p1, sigma = p2; beta: a = p1, b = p2.
    double p1 = 0.0;
    double p2 = 1.0;
    std::vector<double> lambdas;  // dirac_mix only
    std::size_t n = 1;
    std::uint64_t seed = 0;

    static SamplerSpec uniform_interval(double a, double b, std::size_t n, std::uint64_t seed) {
        return {SamplerFamily::UniformInterval, a, b, {}, n, seed};
    }
    static SamplerSpec truncated_gaussian(double mu, double sigma, std::size_t n, std::uint64_t seed) {
        return {SamplerFamily::TruncatedGaussian, mu, sigma, {}, n, seed};
    }
    static SamplerSpec beta(double a, double b, std::size_t n, std::uint64_t seed) {
        return {SamplerFamily::Beta, a, b, {}, n, seed};
    }
    static SamplerSpec dirac_mix(std::vector<double> lambdas) {
        return {SamplerFamily::DiracMix, 0.0, 0.0, std::move(lambdas), 1, 0};
    }

    SamplerSpec with_seed(std::uint64_t s) const {
        SamplerSpec copy = *this;
        copy.seed = s;
        return copy;
    }

    void validate() const {
        VARUNC_REQUIRE(n >= 1, ErrorCode::Validation, "sampler needs n >= 1");
        switch (family) {
            case SamplerFamily::UniformInterval:
                VARUNC_REQUIRE(0.0 <= p1 && p1 < p2 && p2 <= 1.0, ErrorCode::Validation,
                               "uniform interval needs 0 <= a < b <= 1");
                break;
            case SamplerFamily::TruncatedGaussian:
                VARUNC_REQUIRE(std::isfinite(p1) && p2 > 0.0, ErrorCode::Validation,
                               "truncated gaussian needs sigma > 0");
                break;
            case SamplerFamily::Beta:
                VARUNC_REQUIRE(p1 > 0.0 && p2 > 0.0, ErrorCode::Validation, "beta needs a, b > 0");
                break;
            case SamplerFamily::DiracMix:
                VARUNC_REQUIRE(lambdas.size() >= 2, ErrorCode::Validation, "dirac mix needs K >= 2 lambdas");
                break;
        }
    }
};

inline std::string describe(const SamplerSpec& s) {
    auto num = [](double v) {
        std::string out = std::to_string(v);
        out.erase(out.find_last_not_of('0') + 1);
        if (!out.empty() && out.back() == '.') out.pop_back();
        return out;
    };
    switch (s.family) {
        case SamplerFamily::UniformInterval: return "U[" + num(s.p1) + "," + num(s.p2) + "]";
        case SamplerFamily::TruncatedGaussian: return "N(" + num(s.p1) + "," + num(s.p2) + ")";
        case SamplerFamily::Beta: return "Beta(" + num(s.p1) + "," + num(s.p2) + ")";
        case SamplerFamily::DiracMix: {
            std::string out = "DiracMix(";
            for (std::size_t k = 0; k < s.lambdas.size(); ++k) out += (k ? "," : "") + num(s.lambdas[k]);
            return out + ")";
        }
    }
    return "?";
}

/// Equal-weight mixture of n sampled atoms (theta, 1 - theta); exact two-atom mixture for dirac_mix.
/// Uniform draws use theta = a + (b - a) * u, so equal seeds give common random numbers across intervals.
inline AtomMixture sample_q(const SamplerSpec& spec) {
    spec.validate();
    if (spec.family == SamplerFamily::DiracMix) return dirac_mixture(spec.lambdas);

    Rng gen = make_rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(spec.p1, spec.p2);
    std::gamma_distribution<double> gamma_a(spec.p1, 1.0);
    std::gamma_distribution<double> gamma_b(spec.p2, 1.0);

    std::vector<Categorical> atoms;
    atoms.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        double theta = 0.0;
        switch (spec.family) {
            case SamplerFamily::UniformInterval:
                theta = spec.p1 + (spec.p2 - spec.p1) * unit(gen);
                break;
            case SamplerFamily::TruncatedGaussian:
                do {
                    theta = normal(gen);
                } while (theta < 0.0 || theta > 1.0);
                break;
            case SamplerFamily::Beta: {
                double x = 0.0;
                double y = 0.0;
                do {
                    x = gamma_a(gen);
                    y = gamma_b(gen);
                } while (!(x + y > 0.0));
                theta = x / (x + y);
                break;
            }
            case SamplerFamily::DiracMix: break;
        }
        atoms.push_back(Categorical({theta, 1.0 - theta}));
    }
    return AtomMixture(std::move(atoms), std::vector<double>(spec.n, 1.0 / static_cast<double>(spec.n)));
}

/// Equal-weight mixture of n draws from a Dirichlet of any dimension.
inline AtomMixture sample_dirichlet(const DirichletQ& q, std::size_t n, std::uint64_t seed) {
    VARUNC_REQUIRE(n >= 1, ErrorCode::Validation, "sampler needs n >= 1");
    Rng gen = make_rng(seed);
    std::vector<Categorical> atoms;
    atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) atoms.emplace_back(draw_dirichlet(q.alpha(), gen));
    return AtomMixture(std::move(atoms), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

/// Closed-form label-wise (tu_k, au_k, eu_k) under Q = Dirichlet(alpha).
inline LabelwiseTriple dirichlet_moments(const DirichletQ& q) {
    const double a0 = q.alpha0();
    LabelwiseTriple out;
    for (double ak : q.alpha()) {
        const double num = ak * (a0 - ak);
        out.per_label.push_back({num / (a0 * a0), num / (a0 * (a0 + 1.0)), num / (a0 * a0 * (a0 + 1.0))});
    }
    return out;
}

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::vector<double> per_stream;

    /// |mean - reference| within `sigmas` standard errors (exact match required when s.e. is zero).
    bool within(double reference, double sigmas = 3.0) const noexcept {
        return std::abs(mean - reference) <= sigmas * std_error;
    }
};

inline constexpr std::size_t kDefaultStreams = 10;

inline Estimate summarize(std::vector<double> values) {
    Estimate e;
    const double n = static_cast<double>(values.size());
    for (double v : values) e.mean += v;
    e.mean /= n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        e.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    e.per_stream = std::move(values);
    return e;
}

/// Applies every requested measure to `streams` independent sample_q draws
/// (stream s uses seed derive_seed(spec.seed, s)); one Estimate per measure.
inline std::vector<Estimate> mc_estimate(std::span<const MeasureId> measures, const SamplerSpec& spec,
                                         const MeasureOptions& opts = {}, std::size_t streams = kDefaultStreams) {
    VARUNC_REQUIRE(streams >= 1, ErrorCode::Validation, "need at least one stream");
    std::vector<std::vector<double>> values(measures.size(), std::vector<double>(streams));
    for (std::size_t s = 0; s < streams; ++s) {
        const AtomMixture q = sample_q(spec.with_seed(derive_seed(spec.seed, s)));
        const Triple ent = evaluate_family(Family::Entropy, q, opts);
        const Triple var = evaluate_family(Family::Variance, q, opts);
        for (std::size_t m = 0; m < measures.size(); ++m) {
            values[m][s] = select(family_of(measures[m]) == Family::Entropy ? ent : var, measures[m]);
        }
    }
    std::vector<Estimate> out;
    out.reserve(measures.size());
    for (auto& v : values) out.push_back(summarize(std::move(v)));
    return out;
}

inline Estimate mc_estimate(MeasureId measure, const SamplerSpec& spec, const MeasureOptions& opts = {},
                            std::size_t streams = kDefaultStreams) {
    const MeasureId ids[] = {measure};
    return mc_estimate(ids, spec, opts, streams).front();
}

inline constexpr std::size_t kMaxGridLabels = 5;
inline constexpr std::size_t kMinGridResolution = 100;

namespace detail {

// Pairwise coordinate ascent on V: move mass t from label j to label i with the
// one-dimensional optimum, clamped to keep both coordinates nonnegative.
inline void refine_pairwise(std::vector<double>& theta, const WeightVector& w) {
    const std::size_t num_labels = theta.size();
    for (int sweep = 0; sweep < 100000; ++sweep) {
        double largest = 0.0;
        for (std::size_t i = 0; i < num_labels; ++i) {
            for (std::size_t j = i + 1; j < num_labels; ++j) {
                double t = (w[i] * (1.0 - 2.0 * theta[i]) - w[j] * (1.0 - 2.0 * theta[j])) / (2.0 * (w[i] + w[j]));
                t = std::clamp(t, -theta[i], theta[j]);
                theta[i] += t;
                theta[j] -= t;
                largest = std::max(largest, std::abs(t));
            }
        }
        if (largest < 1e-15) break;
    }
    for (double& x : theta) x = std::max(x, 0.0);
}

}  // namespace detail

/// Argmax of concavity_value over the lattice {n / resolution : sum n = resolution},
/// refined by pairwise coordinate ascent from the best lattice point.
inline Categorical grid_maximize(const WeightVector& w, std::size_t resolution = kMinGridResolution) {
    const std::size_t num_labels = w.size();
    VARUNC_REQUIRE(num_labels >= 2, ErrorCode::Validation, "grid_maximize needs K >= 2");
    VARUNC_REQUIRE(num_labels <= kMaxGridLabels, ErrorCode::UnsupportedDimension,
                   "grid_maximize supports K <= 5, got K=" + std::to_string(num_labels));
    VARUNC_REQUIRE(resolution >= kMinGridResolution, ErrorCode::Validation, "grid resolution must be >= 100");

    const double step = 1.0 / static_cast<double>(resolution);
    std::vector<std::size_t> counts(num_labels, 0);
    std::vector<std::size_t> best_counts;
    double best = -1.0;

    // Enumerate compositions of `resolution` into num_labels parts; the last part takes the remainder.
    std::function<void(std::size_t, std::size_t, double)> visit = [&](std::size_t k, std::size_t left, double acc) {
        if (k + 1 == num_labels) {
            const double x = static_cast<double>(left) * step;
            const double v = acc + w[k] * x * (1.0 - x);
            counts[k] = left;
            if (v > best) {
                best = v;
                best_counts = counts;
            }
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            const double x = static_cast<double>(c) * step;
            counts[k] = c;
            visit(k + 1, left - c, acc + w[k] * x * (1.0 - x));
        }
    };
    visit(0, resolution, 0.0);

    std::vector<double> theta(num_labels);
    for (std::size_t k = 0; k < num_labels; ++k) theta[k] = static_cast<double>(best_counts[k]) * step;
    detail::refine_pairwise(theta, w);
    return Categorical(std::move(theta));
}

}  // namespace varunc::oracles
