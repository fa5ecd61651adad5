#include "test_support.hpp"
#include "varunc/transforms.hpp"
#include "varunc/variance.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace varunc;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an exception";
    return ErrorCode::Io;
}

}  // namespace

TEST(Spread, FullStepOnBinaryDirac) {
    const AtomMixture q = AtomMixture::dirac(Categorical({0.5, 0.5}));
    const AtomMixture s = mean_preserving_spread(q, {1.0, 3});
    ASSERT_EQ(s.num_atoms(), 2u);
    // The only sum-zero direction is +-(1,-1); a full step reaches both vertices.
    const double lo = std::min(s.atom(0)[0], s.atom(1)[0]);
    const double hi = std::max(s.atom(0)[0], s.atom(1)[0]);
    EXPECT_NEAR(lo, 0.0, 1e-15);
    EXPECT_NEAR(hi, 1.0, 1e-15);
    EXPECT_EQ(s.weight(0), 0.5);
    EXPECT_EQ(s.weight(1), 0.5);
}

TEST(Spread, PartialStepOnBinaryDirac) {
    const AtomMixture q = AtomMixture::dirac(Categorical({0.5, 0.5}));
    const AtomMixture s = mean_preserving_spread(q, {0.4, 3});
    const double lo = std::min(s.atom(0)[0], s.atom(1)[0]);
    const double hi = std::max(s.atom(0)[0], s.atom(1)[0]);
    EXPECT_NEAR(lo, 0.3, 1e-15);
    EXPECT_NEAR(hi, 0.7, 1e-15);
    EXPECT_NEAR(mean(s)[0], 0.5, 1e-15);
    const WeightVector w = WeightVector::uniform(2);
    EXPECT_GT(aggregate(s, w).eu, aggregate(q, w).eu);
}

TEST(Spread, PreservesMeanAndStaysOnSimplex) {
    Rng gen = make_rng(21);
    std::uniform_real_distribution<double> eps(0.01, 1.0);
    for (int i = 0; i < 500; ++i) {
        const std::size_t k = testing_support::random_between(gen, 2, 6);
        const AtomMixture q = testing_support::random_mixture(gen, k, testing_support::random_between(gen, 1, 8));
        const AtomMixture s = mean_preserving_spread(q, {eps(gen), gen()});
        const std::vector<double> before = testing_support::naive_mean(q);
        const std::vector<double> after = testing_support::naive_mean(s);
        double total = 0.0;
        for (double w : s.weights()) total += w;
        EXPECT_NEAR(total, 1.0, 1e-12);
        for (std::size_t j = 0; j < k; ++j) EXPECT_NEAR(before[j], after[j], 1e-12);
        for (const Categorical& a : s.atoms()) {
            for (double p : a) {
                EXPECT_GE(p, 0.0);
                EXPECT_LE(p, 1.0);
            }
        }
    }
}

TEST(Spread, BoundaryAtomsPassThrough) {
    const Categorical edge({0.0, 0.4, 0.6});
    const AtomMixture q({edge, Categorical({0.2, 0.3, 0.5})}, {0.5, 0.5});
    const AtomMixture s = mean_preserving_spread(q, {0.5, 1});
    EXPECT_EQ(s.num_atoms(), 3u);
    EXPECT_EQ(s.atom(0), edge);
    EXPECT_EQ(s.weight(0), 0.5);
}

TEST(Spread, RejectsNoInteriorAtomAndBadEpsilon) {
    const AtomMixture vertex = AtomMixture::dirac(Categorical({1.0, 0.0}));
    EXPECT_EQ(code_of([&] { mean_preserving_spread(vertex, {0.5, 1}); }), ErrorCode::CannotSpread);
    const AtomMixture q = AtomMixture::dirac(Categorical({0.5, 0.5}));
    EXPECT_EQ(code_of([&] { mean_preserving_spread(q, {0.0, 1}); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([&] { mean_preserving_spread(q, {1.5, 1}); }), ErrorCode::Validation);
}

TEST(Spread, DeterministicUnderSeed) {
    Rng gen = make_rng(22);
    const AtomMixture q = testing_support::random_mixture(gen, 4, 6);
    const AtomMixture a = mean_preserving_spread(q, {0.7, 123});
    const AtomMixture b = mean_preserving_spread(q, {0.7, 123});
    ASSERT_EQ(a.num_atoms(), b.num_atoms());
    for (std::size_t i = 0; i < a.num_atoms(); ++i) EXPECT_EQ(a.atom(i), b.atom(i));
}

TEST(LocationShift, Translates) {
    const AtomMixture q({Categorical({0.3, 0.7}), Categorical({0.4, 0.6})}, {0.5, 0.5});
    const std::vector<double> z = {0.2, -0.2};
    const AtomMixture s = location_shift(q, z);
    EXPECT_NEAR(s.atom(0)[0], 0.5, 1e-15);
    EXPECT_NEAR(s.atom(1)[0], 0.6, 1e-15);
    EXPECT_EQ(s.weight(1), 0.5);
}

TEST(LocationShift, Rejections) {
    const AtomMixture q = AtomMixture::dirac(Categorical({0.3, 0.7}));
    const std::vector<double> zero = {0.0, 0.0};
    const std::vector<double> unbalanced = {0.1, 0.0};
    const std::vector<double> far = {0.8, -0.8};
    const std::vector<double> short_z = {0.1};
    EXPECT_EQ(code_of([&] { location_shift(q, zero); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([&] { location_shift(q, unbalanced); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([&] { location_shift(q, far); }), ErrorCode::InfeasibleShift);
    EXPECT_EQ(code_of([&] { location_shift(q, short_z); }), ErrorCode::DimensionMismatch);
}

TEST(LocationShift, PreservesPairwiseDifferencesAndVarianceEu) {
    Rng gen = make_rng(23);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t k = testing_support::random_between(gen, 2, 5);
        const AtomMixture q = testing_support::random_mixture(gen, k, 4);
        std::vector<double> d = draw_sum_zero_direction(k, gen);
        const double t = max_feasible_step(q, d);
        if (!(t > 0.0) || !std::isfinite(t)) continue;
        for (double& x : d) x *= 0.5 * t;
        const AtomMixture s = location_shift(q, d);
        for (std::size_t a = 0; a < q.num_atoms(); ++a) {
            for (std::size_t j = 0; j < k; ++j) {
                EXPECT_NEAR(s.atom(a)[j] - s.atom(0)[j], q.atom(a)[j] - q.atom(0)[j], 1e-12);
            }
        }
        const WeightVector w = WeightVector::uniform(k);
        EXPECT_NEAR(aggregate(s, w).eu, aggregate(q, w).eu, 1e-12);
        ++checked;
    }
    EXPECT_GT(checked, 400);
}

TEST(CenterShift, AffineMean) {
    const AtomMixture q = AtomMixture::dirac(Categorical({0.9, 0.1}));
    const AtomMixture s = center_shift(q, 0.5, Categorical({0.5, 0.5}));
    EXPECT_NEAR(s.atom(0)[0], 0.7, 1e-15);
    EXPECT_NEAR(s.atom(0)[1], 0.3, 1e-15);
    EXPECT_THROW(center_shift(q, 1.0), Error);
    EXPECT_THROW(center_shift(q, 0.0), Error);
}

TEST(CenterShift, EqualWeightsIncreaseAuAndTu) {
    const AtomMixture q({Categorical({0.8, 0.15, 0.05}), Categorical({0.7, 0.2, 0.1})}, {0.5, 0.5});
    const AtomMixture s = center_shift(q, 0.5);
    const WeightVector w = WeightVector::uniform(3);
    EXPECT_GT(aggregate(s, w).au, aggregate(q, w).au);
    EXPECT_GT(aggregate(s, w).tu, aggregate(q, w).tu);
}

TEST(CenterShift, TowardBetaIncreasesAuAndTu) {
    const WeightVector w{1.0, 1.0, 2.0};
    const AtomMixture q({Categorical({0.7, 0.2, 0.1}), Categorical({0.6, 0.3, 0.1})}, {0.5, 0.5});
    const AtomMixture s = center_shift(q, 0.6, beta_maximizer(w));
    EXPECT_GT(aggregate(s, w).au, aggregate(q, w).au);
    EXPECT_GT(aggregate(s, w).tu, aggregate(q, w).tu);
}
