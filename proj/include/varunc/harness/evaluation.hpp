#pragma once

// Scoring of prediction records and the downstream evaluations: accuracy-rejection
// curves, OoD AUROC and correct/incorrect histograms.

#include "varunc/error.hpp"
#include "varunc/harness/records.hpp"
#include "varunc/measures.hpp"
#include "varunc/variance.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace varunc::harness {

struct ScoreTable {
    std::vector<MeasureId> measures;
    /// scores[m][i]: measure m on record i.
    std::vector<std::vector<double>> scores;
    /// Variance label-wise triples per record (unweighted).
    std::vector<LabelwiseTriple> labelwise;

    const std::vector<double>& column(MeasureId id) const {
        for (std::size_t m = 0; m < measures.size(); ++m) {
            if (measures[m] == id) return scores[m];
        }
        throw Error(ErrorCode::UnknownId, "measure '" + std::string(to_string(id)) + "' was not scored");
    }
};

/// Scores every record's empirical second-order distribution. Variance measures use `weights`
/// (unit weights when absent); label-wise variance triples are always attached.
inline ScoreTable score(std::span<const PredictionRecord> records, std::span<const MeasureId> measures,
                        const std::optional<WeightVector>& weights = std::nullopt) {
    ScoreTable table;
    table.measures.assign(measures.begin(), measures.end());
    table.scores.assign(measures.size(), std::vector<double>(records.size()));
    table.labelwise.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const AtomMixture q = records[i].second_order();
        if (weights) {
            VARUNC_REQUIRE(weights->size() == q.num_labels(), ErrorCode::DimensionMismatch,
                           "weights have length " + std::to_string(weights->size()) + " but record '" +
                               records[i].id + "' has K=" + std::to_string(q.num_labels()));
        }
        const WeightVector w = weights ? *weights : WeightVector::uniform(q.num_labels());
        const LabelwiseTriple lw = labelwise(q);
        const AggregateTriple agg = aggregate(lw, w);
        const EntropyTriple ent = entropy_triple(q);
        for (std::size_t m = 0; m < measures.size(); ++m) {
            const Triple t = family_of(measures[m]) == Family::Entropy ? Triple{ent.tu, ent.au, ent.eu}
                                                                       : Triple{agg.tu, agg.au, agg.eu};
            table.scores[m][i] = select(t, measures[m]);
        }
        table.labelwise.push_back(lw);
    }
    return table;
}

struct ArcPoint {
    double fraction = 0.0;
    /// Empty when every instance was rejected.
    std::optional<double> accuracy;
    std::size_t retained = 0;
};

struct ArcCurve {
    std::vector<ArcPoint> points;
};

/// Parses "start:stop:step" (inclusive) or a comma-separated list of fractions.
inline std::vector<double> parse_grid(std::string_view spec) {
    std::vector<double> grid;
    auto number = [&](std::string_view s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(std::string(s), &used);
            if (used != s.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorCode::Validation, "bad grid value '" + std::string(s) + "'");
        }
    };
    const std::size_t c1 = spec.find(':');
    if (c1 != std::string_view::npos) {
        const std::size_t c2 = spec.find(':', c1 + 1);
        VARUNC_REQUIRE(c2 != std::string_view::npos, ErrorCode::Validation, "grid range must be start:stop:step");
        const double start = number(spec.substr(0, c1));
        const double stop = number(spec.substr(c1 + 1, c2 - c1 - 1));
        const double step = number(spec.substr(c2 + 1));
        VARUNC_REQUIRE(step > 0.0 && stop >= start, ErrorCode::Validation, "grid range needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
    } else {
        std::size_t start = 0;
        for (;;) {
            const std::size_t pos = spec.find(',', start);
            grid.push_back(number(spec.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
    }
    return grid;
}

inline std::vector<double> default_arc_grid() { return parse_grid("0:0.99:0.01"); }

/// At each fraction r, rejects the ceil(r N) highest-scoring instances (equal scores:
/// earlier records are rejected first) and reports accuracy of the rest.
inline ArcCurve arc(std::span<const PredictionRecord> records, std::span<const double> scores,
                    std::span<const double> grid) {
    VARUNC_REQUIRE(records.size() == scores.size(), ErrorCode::DimensionMismatch, "scores are not aligned with records");
    for (std::size_t g = 0; g < grid.size(); ++g) {
        VARUNC_REQUIRE(grid[g] >= 0.0 && grid[g] < 1.0, ErrorCode::Validation, "grid fractions must lie in [0, 1)");
        VARUNC_REQUIRE(g == 0 || grid[g] > grid[g - 1], ErrorCode::Validation, "grid must be strictly increasing");
    }
    const std::size_t n = records.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<unsigned char> correct(n);
    for (std::size_t i = 0; i < n; ++i) correct[i] = records[i].correct() ? 1 : 0;
    // suffix_correct[j]: correct predictions among order[j..n).
    std::vector<std::size_t> suffix_correct(n + 1, 0);
    for (std::size_t j = n; j-- > 0;) suffix_correct[j] = suffix_correct[j + 1] + correct[order[j]];

    ArcCurve curve;
    for (double r : grid) {
        // The 1e-9 guard keeps grid values like 0.29 from rounding up past 29 of 100.
        const auto rejected = std::min(n, static_cast<std::size_t>(std::ceil(r * static_cast<double>(n) - 1e-9)));
        ArcPoint p;
        p.fraction = r;
        p.retained = n - rejected;
        if (p.retained > 0) p.accuracy = static_cast<double>(suffix_correct[rejected]) / static_cast<double>(p.retained);
        curve.points.push_back(p);
    }
    return curve;
}

/// Area under the ROC curve with OoD as the positive class, by midranks:
/// P(ood > id) + P(ood == id) / 2.
inline double auroc(std::span<const double> id_scores, std::span<const double> ood_scores) {
    VARUNC_REQUIRE(!id_scores.empty() && !ood_scores.empty(), ErrorCode::Validation, "AUROC needs both score sets");
    struct Entry {
        double value;
        bool ood;
    };
    std::vector<Entry> all;
    all.reserve(id_scores.size() + ood_scores.size());
    for (double v : id_scores) all.push_back({v, false});
    for (double v : ood_scores) all.push_back({v, true});
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });
    double ood_rank_sum = 0.0;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j].value == all[i].value) ++j;
        // Ranks i+1 .. j share their average.
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t) {
            if (all[t].ood) ood_rank_sum += midrank;
        }
        i = j;
    }
    const double n_ood = static_cast<double>(ood_scores.size());
    const double n_id = static_cast<double>(id_scores.size());
    return (ood_rank_sum - n_ood * (n_ood + 1.0) / 2.0) / (n_id * n_ood);
}

struct ScoreSummary {
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
};

inline ScoreSummary summarize_scores(std::span<const double> scores) {
    VARUNC_REQUIRE(!scores.empty(), ErrorCode::Validation, "cannot summarize an empty score set");
    std::vector<double> s(scores.begin(), scores.end());
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    const double median = n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
    return {s.front(), median, s.back()};
}

struct OodReport {
    MeasureId measure = MeasureId::EuVar;
    double auroc = 0.5;
    ScoreSummary id;
    ScoreSummary ood;
};

inline OodReport ood_report(MeasureId measure, std::span<const double> id_scores, std::span<const double> ood_scores) {
    return {measure, auroc(id_scores, ood_scores), summarize_scores(id_scores), summarize_scores(ood_scores)};
}

struct HistogramSplit {
    /// bins + 1 edges spanning the observed score range.
    std::vector<double> edges;
    std::vector<std::size_t> correct;
    std::vector<std::size_t> incorrect;
};

inline HistogramSplit histogram_split(std::span<const PredictionRecord> records, std::span<const double> scores,
                                      std::size_t bins = 30) {
    VARUNC_REQUIRE(bins >= 2, ErrorCode::Validation, "histogram needs at least 2 bins");
    VARUNC_REQUIRE(records.size() == scores.size(), ErrorCode::DimensionMismatch, "scores are not aligned with records");
    HistogramSplit h;
    h.correct.assign(bins, 0);
    h.incorrect.assign(bins, 0);
    double lo = 0.0;
    double hi = 0.0;
    if (!scores.empty()) {
        const auto [mn, mx] = std::minmax_element(scores.begin(), scores.end());
        lo = *mn;
        hi = *mx;
    }
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b) h.edges.push_back(b == bins ? hi : lo + static_cast<double>(b) * width);
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::size_t b = 0;
        if (width > 0.0) {
            b = std::min(bins - 1, static_cast<std::size_t>((scores[i] - lo) / width));
        }
        (records[i].correct() ? h.correct : h.incorrect)[b] += 1;
    }
    return h;
}

}  // namespace varunc::harness
