#include "test_support.hpp"
#include "varunc/harness/evaluation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace varunc;
using namespace varunc::harness;

namespace {

PredictionRecord record(const std::string& id, std::size_t label, std::vector<Categorical> members) {
    PredictionRecord r;
    r.id = id;
    r.label = label;
    r.members = std::move(members);
    return r;
}

/// Random K=3 records; roughly a third are misclassified.
std::vector<PredictionRecord> random_records(Rng& gen, std::size_t n) {
    std::vector<PredictionRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Categorical> members;
        const std::size_t m = testing_support::random_between(gen, 1, 4);
        for (std::size_t j = 0; j < m; ++j) members.push_back(testing_support::random_categorical(gen, 3));
        out.push_back(record("r" + std::to_string(i), testing_support::random_between(gen, 0, 2), members));
    }
    return out;
}

// Brute-force pair counting with ties worth one half.
double pairwise_auroc(const std::vector<double>& id, const std::vector<double>& ood) {
    double wins = 0.0;
    for (double o : ood) {
        for (double i : id) wins += o > i ? 1.0 : (o == i ? 0.5 : 0.0);
    }
    return wins / static_cast<double>(id.size() * ood.size());
}

}  // namespace

TEST(Score, TwoVertexMembers) {
    const std::vector<PredictionRecord> records = {
        record("x", 0, {Categorical({1.0, 0.0}), Categorical({0.0, 1.0})})};
    const std::vector<MeasureId> ids = {MeasureId::TuVar, MeasureId::AuVar, MeasureId::EuVar, MeasureId::EuEnt};
    const ScoreTable t = score(records, ids);
    EXPECT_DOUBLE_EQ(t.column(MeasureId::TuVar)[0], 0.5);
    EXPECT_EQ(t.column(MeasureId::AuVar)[0], 0.0);
    EXPECT_DOUBLE_EQ(t.column(MeasureId::EuVar)[0], 0.5);
    EXPECT_DOUBLE_EQ(t.column(MeasureId::EuEnt)[0], 1.0);
    EXPECT_EQ(t.labelwise[0].size(), 2u);
    EXPECT_THROW(t.column(MeasureId::TuEnt), Error);
}

TEST(Score, IdenticalMembersHaveZeroEu) {
    const Categorical c({0.2, 0.5, 0.3});
    const std::vector<PredictionRecord> records = {record("x", 1, {c, c, c})};
    const std::vector<MeasureId> ids = {MeasureId::EuVar, MeasureId::EuEnt};
    const ScoreTable t = score(records, ids);
    EXPECT_EQ(t.scores[0][0], 0.0);
    EXPECT_NEAR(t.scores[1][0], 0.0, 1e-15);
}

TEST(Score, WeightsAndMismatch) {
    const std::vector<PredictionRecord> records = {
        record("x", 0, {Categorical({0.2, 0.3, 0.5}), Categorical({0.6, 0.1, 0.3})})};
    const std::vector<MeasureId> ids = {MeasureId::TuVar};
    const ScoreTable plain = score(records, ids);
    const ScoreTable weighted = score(records, ids, WeightVector{1.0, 1.0, 2.0});
    const LabelwiseTriple& lw = plain.labelwise[0];
    EXPECT_NEAR(weighted.scores[0][0], lw[0].tu + lw[1].tu + 2.0 * lw[2].tu, 1e-15);
    EXPECT_THROW(score(records, ids, WeightVector{1.0, 2.0}), Error);
}

TEST(Score, TuIsAuPlusEuPerInstance) {
    Rng gen = make_rng(51);
    const auto records = random_records(gen, 300);
    const std::vector<MeasureId> ids = {MeasureId::TuVar, MeasureId::AuVar, MeasureId::EuVar};
    const ScoreTable t = score(records, ids);
    for (std::size_t i = 0; i < records.size(); ++i) {
        EXPECT_NEAR(t.scores[0][i], t.scores[1][i] + t.scores[2][i], 1e-12);
    }
}

TEST(Grid, Parsing) {
    const auto g = default_arc_grid();
    ASSERT_EQ(g.size(), 100u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_NEAR(g.back(), 0.99, 1e-12);
    EXPECT_EQ(parse_grid("0,0.5"), (std::vector<double>{0.0, 0.5}));
    EXPECT_THROW(parse_grid("0:1"), Error);
    EXPECT_THROW(parse_grid("a,b"), Error);
}

TEST(Arc, ConstantScoresAreUninformative) {
    Rng gen = make_rng(52);
    const auto records = random_records(gen, 200);
    const std::vector<double> scores(records.size(), 0.3);
    const std::vector<double> grid = {0.0, 0.5};
    const ArcCurve c = arc(records, scores, grid);
    std::size_t correct = 0;
    for (const auto& r : records) correct += r.correct() ? 1 : 0;
    EXPECT_DOUBLE_EQ(*c.points[0].accuracy, static_cast<double>(correct) / 200.0);
    EXPECT_EQ(c.points[1].retained, 100u);
}

TEST(Arc, OracleScoresReachPerfectAccuracyAtErrorRate) {
    Rng gen = make_rng(53);
    const auto records = random_records(gen, 100);
    std::vector<double> scores;
    std::size_t errors = 0;
    for (const auto& r : records) {
        scores.push_back(r.correct() ? 0.0 : 1.0);
        errors += r.correct() ? 0 : 1;
    }
    ASSERT_GT(errors, 0u);
    const double rate = static_cast<double>(errors) / 100.0;
    const std::vector<double> grid = {0.0, rate};
    const ArcCurve c = arc(records, scores, grid);
    EXPECT_EQ(*c.points[1].accuracy, 1.0);
    EXPECT_DOUBLE_EQ(*c.points[0].accuracy, 1.0 - rate);
}

TEST(Arc, MatchesBruteForceReference) {
    // Reference: for each r sort a copy by score descending (stable), drop the first ceil(rN), count.
    Rng gen = make_rng(54);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = testing_support::random_between(gen, 1, 60);
        const auto records = random_records(gen, n);
        std::vector<double> scores(n);
        for (double& s : scores) s = static_cast<double>(testing_support::random_between(gen, 0, 5));
        const auto grid = default_arc_grid();
        const ArcCurve c = arc(records, scores, grid);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            std::vector<std::size_t> idx(n);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
            const auto drop = static_cast<std::size_t>(std::ceil(grid[g] * static_cast<double>(n) - 1e-9));
            std::size_t kept = 0;
            std::size_t right = 0;
            for (std::size_t j = std::min(drop, n); j < n; ++j) {
                ++kept;
                right += records[idx[j]].correct() ? 1 : 0;
            }
            ASSERT_EQ(c.points[g].retained, kept);
            if (kept == 0) {
                EXPECT_FALSE(c.points[g].accuracy.has_value());
            } else {
                EXPECT_EQ(*c.points[g].accuracy, static_cast<double>(right) / static_cast<double>(kept));
            }
        }
    }
}

TEST(Arc, EmptyRemainderHasNoAccuracy) {
    const std::vector<PredictionRecord> records = {record("a", 0, {Categorical({0.9, 0.1})})};
    const std::vector<double> scores = {1.0};
    const std::vector<double> grid = {0.0, 0.5};
    const ArcCurve c = arc(records, scores, grid);
    EXPECT_TRUE(c.points[0].accuracy.has_value());
    EXPECT_FALSE(c.points[1].accuracy.has_value());
}

TEST(Arc, PermutationInvariantWithDistinctScores) {
    Rng gen = make_rng(55);
    auto records = random_records(gen, 80);
    std::vector<double> scores(80);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& s : scores) s = u(gen);
    const auto grid = default_arc_grid();
    const ArcCurve a = arc(records, scores, grid);
    std::vector<std::size_t> perm(80);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<PredictionRecord> pr;
    std::vector<double> ps;
    for (std::size_t i : perm) {
        pr.push_back(records[i]);
        ps.push_back(scores[i]);
    }
    const ArcCurve b = arc(pr, ps, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) EXPECT_EQ(a.points[g].accuracy, b.points[g].accuracy);
}

TEST(Arc, Validation) {
    const std::vector<PredictionRecord> records = {record("a", 0, {Categorical({0.9, 0.1})})};
    const std::vector<double> scores = {1.0};
    const std::vector<double> bad_grid = {0.5, 0.2};
    const std::vector<double> out_of_range = {1.0};
    EXPECT_THROW(arc(records, scores, bad_grid), Error);
    EXPECT_THROW(arc(records, scores, out_of_range), Error);
    EXPECT_THROW(arc(records, std::vector<double>{}, default_arc_grid()), Error);
}

TEST(Auroc, KnownValues) {
    EXPECT_EQ(auroc(std::vector<double>{0, 0}, std::vector<double>{1, 1}), 1.0);
    EXPECT_EQ(auroc(std::vector<double>{1, 2, 2, 3}, std::vector<double>{2, 3, 1, 2}), 0.5);
    const std::vector<double> id = {1, 2, 3};
    const std::vector<double> ood = {2, 3, 4};
    EXPECT_EQ(pairwise_auroc(id, ood), 7.0 / 9.0);
    EXPECT_DOUBLE_EQ(auroc(id, ood), 7.0 / 9.0);
    EXPECT_THROW(auroc(std::vector<double>{}, ood), Error);
}

TEST(Auroc, InvariantUnderIncreasingTransform) {
    Rng gen = make_rng(56);
    std::uniform_int_distribution<int> v(0, 9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> id(15);
        std::vector<double> ood(12);
        for (double& x : id) x = v(gen);
        for (double& x : ood) x = v(gen);
        std::vector<double> tid;
        std::vector<double> tood;
        for (double x : id) tid.push_back(std::exp(x) + 3.0 * x);
        for (double x : ood) tood.push_back(std::exp(x) + 3.0 * x);
        EXPECT_EQ(auroc(id, ood), auroc(tid, tood));
    }
}

TEST(Histogram, CountsAndOracle) {
    Rng gen = make_rng(57);
    const auto records = random_records(gen, 150);
    std::vector<double> scores;
    for (const auto& r : records) scores.push_back(r.correct() ? 0.0 : 1.0);
    const HistogramSplit h = histogram_split(records, scores, 30);
    ASSERT_EQ(h.edges.size(), 31u);
    std::size_t total = 0;
    for (std::size_t b = 0; b < 30; ++b) total += h.correct[b] + h.incorrect[b];
    EXPECT_EQ(total, 150u);
    const std::size_t wrong = std::accumulate(h.incorrect.begin(), h.incorrect.end(), std::size_t{0});
    EXPECT_EQ(h.incorrect.back(), wrong);
    EXPECT_THROW(histogram_split(records, scores, 1), Error);
}

TEST(Histogram, AllCorrect) {
    std::vector<PredictionRecord> records;
    std::vector<double> scores;
    for (int i = 0; i < 10; ++i) {
        records.push_back(record("r" + std::to_string(i), 1, {Categorical({0.2, 0.8})}));
        scores.push_back(0.1 * i);
    }
    const HistogramSplit h = histogram_split(records, scores, 5);
    for (std::size_t c : h.incorrect) EXPECT_EQ(c, 0u);
}

TEST(OodReport, Summaries) {
    const OodReport r = ood_report(MeasureId::EuVar, std::vector<double>{1, 2, 3}, std::vector<double>{2, 3, 4, 5});
    EXPECT_EQ(r.id.median, 2.0);
    EXPECT_EQ(r.ood.median, 3.5);
    EXPECT_EQ(r.ood.max, 5.0);
}
