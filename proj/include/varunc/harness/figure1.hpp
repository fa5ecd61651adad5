#pragma once

// The six Bernoulli-parameter panels: U[0,1], N(0.5,0.1), Beta(8,2), U[0.3,0.7],
// U[0.6,1.0] and (delta_0 + delta_1)/2, each scored with both measure families.
// Variance measures are normalized to [0, 1]. All sampled panels share one seed,
// so the two width-0.4 uniform panels use common random numbers.

#include "varunc/measures.hpp"
#include "varunc/oracles.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace varunc::harness {

struct BernoulliPanel {
    char key = 'a';
    oracles::SamplerSpec spec;
    /// One estimate per entry of kAllMeasures.
    std::vector<oracles::Estimate> estimates;

    const oracles::Estimate& at(MeasureId id) const { return estimates[static_cast<std::size_t>(id)]; }
};

inline std::vector<oracles::SamplerSpec> figure1_specs(std::size_t samples, std::uint64_t seed) {
    using oracles::SamplerSpec;
    return {SamplerSpec::uniform_interval(0.0, 1.0, samples, seed),
            SamplerSpec::truncated_gaussian(0.5, 0.1, samples, seed),
            SamplerSpec::beta(8.0, 2.0, samples, seed),
            SamplerSpec::uniform_interval(0.3, 0.7, samples, seed),
            SamplerSpec::uniform_interval(0.6, 1.0, samples, seed),
            SamplerSpec::dirac_mix({0.5, 0.5})};
}

inline std::vector<BernoulliPanel> figure1_panels(std::size_t samples = 100000, std::uint64_t seed = 0,
                                                std::size_t streams = oracles::kDefaultStreams) {
    MeasureOptions opts;
    opts.normalize = true;
    std::vector<BernoulliPanel> panels;
    char key = 'a';
    for (const auto& spec : figure1_specs(samples, seed)) {
        BernoulliPanel p;
        p.key = key++;
        p.spec = spec;
        p.estimates = oracles::mc_estimate(kAllMeasures, spec, opts, streams);
        panels.push_back(std::move(p));
    }
    return panels;
}

}  // namespace varunc::harness
