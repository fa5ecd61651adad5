#include "varunc/harness/evaluation.hpp"
#include "varunc/harness/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace varunc;
using namespace varunc::harness;

namespace {

SyntheticConfig small(std::uint64_t seed) {
    SyntheticConfig cfg = SyntheticConfig::defaults(seed);
    cfg.n_train = 300;
    cfg.n_test = 300;
    cfg.n_ood = 300;
    return cfg;
}

double accuracy(const std::vector<PredictionRecord>& records) {
    std::size_t right = 0;
    for (const auto& r : records) right += r.correct() ? 1 : 0;
    return static_cast<double>(right) / static_cast<double>(records.size());
}

}  // namespace

TEST(Synth, DefaultClustersAreWellSeparated) {
    const SyntheticConfig cfg = SyntheticConfig::defaults(0);
    for (std::size_t a = 0; a < cfg.num_classes; ++a) {
        for (std::size_t b = a + 1; b < cfg.num_classes; ++b) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < cfg.dim; ++j) {
                d2 += (cfg.class_means[a][j] - cfg.class_means[b][j]) * (cfg.class_means[a][j] - cfg.class_means[b][j]);
            }
            EXPECT_GE(std::sqrt(d2), 6.0 * cfg.class_sigma[a]);
        }
        double d2 = 0.0;
        for (std::size_t j = 0; j < cfg.dim; ++j) {
            d2 += (cfg.class_means[a][j] - cfg.ood_mean[j]) * (cfg.class_means[a][j] - cfg.ood_mean[j]);
        }
        EXPECT_GE(std::sqrt(d2), 10.0 * cfg.class_sigma[a]);
    }
}

TEST(Synth, WellSeparatedClustersAreLearned) {
    for (std::uint64_t seed : {1u, 2u}) {
        const SyntheticConfig cfg = small(seed);
        const SyntheticRun run = synth_run(cfg);
        EXPECT_GE(accuracy(run.test), 0.95);
        EXPECT_EQ(run.test.size(), cfg.n_test);
        EXPECT_EQ(run.ood.size(), cfg.n_ood);
        EXPECT_EQ(run.test.front().members.size(), cfg.ensemble_size);
        EXPECT_EQ(run.ood.front().split, "ood");
    }
}

TEST(Synth, OodHasHigherEpistemicUncertainty) {
    for (std::uint64_t seed : {3u, 4u}) {
        const SyntheticRun run = synth_run(small(seed));
        const std::vector<MeasureId> ids = {MeasureId::EuVar};
        const auto id_scores = score(run.test, ids).scores[0];
        const auto ood_scores = score(run.ood, ids).scores[0];
        double id_mean = 0.0;
        double ood_mean = 0.0;
        for (double s : id_scores) id_mean += s / static_cast<double>(id_scores.size());
        for (double s : ood_scores) ood_mean += s / static_cast<double>(ood_scores.size());
        EXPECT_GT(ood_mean, id_mean);
    }
}

TEST(Synth, SingleMemberHasZeroEu) {
    SyntheticConfig cfg = small(5);
    cfg.ensemble_size = 1;
    const SyntheticRun run = synth_run(cfg);
    const std::vector<MeasureId> ids = {MeasureId::EuVar, MeasureId::EuEnt};
    const ScoreTable t = score(run.ood, ids);
    for (const auto& col : t.scores) {
        for (double s : col) EXPECT_EQ(s, 0.0);
    }
}

TEST(Synth, DeterministicUnderSeed) {
    const SyntheticRun a = synth_run(small(6));
    const SyntheticRun b = synth_run(small(6));
    ASSERT_EQ(a.test.size(), b.test.size());
    for (std::size_t i = 0; i < a.test.size(); ++i) {
        for (std::size_t m = 0; m < a.test[i].members.size(); ++m) EXPECT_EQ(a.test[i].members[m], b.test[i].members[m]);
    }
    const SyntheticRun c = synth_run(small(7));
    EXPECT_FALSE(a.test[0].members[0] == c.test[0].members[0]);
}

TEST(Synth, DivergenceNamesLearningRate) {
    SyntheticConfig cfg = small(8);
    cfg.learning_rate = 1e308;
    try {
        synth_run(cfg);
        FAIL() << "expected divergence";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Divergence);
        EXPECT_NE(std::string(e.what()).find("learning rate"), std::string::npos);
    }
}

TEST(Synth, InvalidConfig) {
    SyntheticConfig cfg = small(9);
    cfg.n_test = 0;
    EXPECT_THROW(synth_run(cfg), Error);
    cfg = small(9);
    cfg.learning_rate = -1.0;
    EXPECT_THROW(synth_run(cfg), Error);
}
