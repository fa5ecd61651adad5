#include "test_support.hpp"
#include "varunc/oracles.hpp"
#include "varunc/simplex.hpp"

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

TEST(Categorical, RenormalizesWithinTolerance) {
    const Categorical c({0.5, 0.5 + 5e-10});
    EXPECT_DOUBLE_EQ(c[0] + c[1], 1.0);
    EXPECT_EQ(code_of([] { Categorical({0.5, 0.6}); }), ErrorCode::Validation);
}

TEST(Categorical, RejectsInvalidEntries) {
    EXPECT_EQ(code_of([] { Categorical({1.0}); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([] { Categorical({1.2, -0.2}); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([] { Categorical({NAN, 1.0}); }), ErrorCode::Validation);
}

TEST(Categorical, InteriorAndArgmax) {
    EXPECT_TRUE(Categorical({0.2, 0.8}).interior());
    EXPECT_FALSE(Categorical({0.0, 1.0}).interior());
    EXPECT_EQ(Categorical({0.4, 0.4, 0.2}).argmax(), 0u);
    EXPECT_EQ(Categorical({0.1, 0.2, 0.7}).argmax(), 2u);
}

TEST(AtomMixture, ValidatesShape) {
    EXPECT_EQ(code_of([] { AtomMixture({}, {}); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([] { AtomMixture({Categorical({0.5, 0.5})}, {0.5, 0.5}); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { AtomMixture({Categorical({0.5, 0.5}), Categorical({0.2, 0.3, 0.5})}, {0.5, 0.5}); }),
              ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { AtomMixture({Categorical({0.5, 0.5})}, {0.9}); }), ErrorCode::Validation);
}

TEST(AtomMixture, AcceptsManyEqualWeights) {
    const std::size_t n = 100000;
    std::vector<Categorical> atoms(n, Categorical({0.3, 0.7}));
    EXPECT_NO_THROW(AtomMixture(std::move(atoms), std::vector<double>(n, 1.0 / static_cast<double>(n))));
}

TEST(Mean, SymmetricPair) {
    const AtomMixture q({Categorical({1.0, 0.0}), Categorical({0.0, 1.0})}, {0.5, 0.5});
    EXPECT_EQ(mean(q), Categorical({0.5, 0.5}));
}

TEST(Mean, DiracIsExact) {
    const Categorical theta({0.2, 0.8});
    const Categorical m = mean(AtomMixture::dirac(theta));
    EXPECT_EQ(m[0], 0.2);
    EXPECT_EQ(m[1], 0.8);
}

TEST(Mean, DirichletAgreesWithMonteCarlo) {
    const DirichletQ q({2.0, 8.0});
    const Categorical closed = mean(q);
    EXPECT_NEAR(closed[0], 0.2, 1e-15);
    // 10^6 draws; the Beta(2,8) coordinate has sd sqrt(16/1100), so the sample mean has sd ~1.2e-4.
    const AtomMixture mc = oracles::sample_dirichlet(q, 1000000, 99);
    const std::vector<double> m = testing_support::naive_mean(mc);
    const double sd = std::sqrt(2.0 * 8.0 / (100.0 * 11.0) / 1e6);
    EXPECT_NEAR(m[0], 0.2, 3.0 * sd);
    EXPECT_NEAR(m[1], 0.8, 3.0 * sd);
}

TEST(Mean, DirichletReproducesAlpha) {
    const DirichletQ q({0.5, 3.0, 7.25});
    const Categorical m = mean(q);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(m[k] * q.alpha0(), q.alpha()[k], 1e-12);
}

TEST(FromEnsemble, EqualWeights) {
    const std::vector<Categorical> one = {Categorical({1.0, 0.0})};
    const AtomMixture d = from_ensemble(one);
    EXPECT_EQ(d.num_atoms(), 1u);
    EXPECT_EQ(d.weight(0), 1.0);

    const std::vector<Categorical> pair = {Categorical({0.6, 0.4}), Categorical({0.4, 0.6})};
    const AtomMixture q = from_ensemble(pair);
    EXPECT_EQ(q.weight(0), 0.5);
    EXPECT_EQ(q.atom(1), pair[1]);

    const std::vector<Categorical> five(5, Categorical({0.1, 0.9}));
    const AtomMixture ensemble = from_ensemble(five);
    for (double w : ensemble.weights()) EXPECT_EQ(w, 0.2);
}

TEST(FromEnsemble, RejectsMixedDimensions) {
    const std::vector<Categorical> bad = {Categorical({0.5, 0.5}), Categorical({0.2, 0.3, 0.5})};
    EXPECT_EQ(code_of([&] { from_ensemble(bad); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { from_ensemble(std::vector<Categorical>{}); }), ErrorCode::Validation);
}

TEST(FromEnsemble, MeanIsArithmeticMean) {
    Rng gen = make_rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = testing_support::random_between(gen, 2, 6);
        const std::size_t m = testing_support::random_between(gen, 1, 12);
        std::vector<Categorical> members;
        for (std::size_t i = 0; i < m; ++i) members.push_back(testing_support::random_categorical(gen, k));
        const Categorical got = mean(from_ensemble(members));
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (const auto& c : members) s += c[j];
            EXPECT_NEAR(got[j], s / static_cast<double>(m), 1e-12);
        }
    }
}

TEST(DiracMixture, VertexAtoms) {
    const std::vector<double> half = {0.5, 0.5};
    const AtomMixture f = dirac_mixture(half);
    EXPECT_EQ(f.atom(0), Categorical::vertex(2, 0));
    EXPECT_EQ(f.atom(1), Categorical::vertex(2, 1));

    const std::vector<double> corner = {1.0, 0.0, 0.0};
    EXPECT_EQ(mean(dirac_mixture(corner)), Categorical::vertex(3, 0));

    const std::vector<double> skew = {0.3, 0.7};
    const AtomMixture s = dirac_mixture(skew);
    EXPECT_EQ(s.weight(0), 0.3);
    EXPECT_EQ(s.weight(1), 0.7);

    const std::vector<double> bad = {0.3, 0.3};
    EXPECT_EQ(code_of([&] { dirac_mixture(bad); }), ErrorCode::Validation);
}

TEST(WeightVector, StrictlyPositive) {
    EXPECT_EQ(code_of([] { WeightVector({1.0, 0.0}); }), ErrorCode::Validation);
    EXPECT_TRUE(WeightVector::uniform(4).is_uniform());
    EXPECT_FALSE(WeightVector({1.0, 2.0}).is_uniform());
}

TEST(Dirichlet, RejectsNonPositiveAlpha) {
    EXPECT_EQ(code_of([] { DirichletQ({1.0, 0.0}); }), ErrorCode::Validation);
    EXPECT_EQ(code_of([] { DirichletQ({1.0}); }), ErrorCode::Validation);
}
