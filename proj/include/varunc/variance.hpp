#pragma once

// Variance-based uncertainty measures from the law of total variance applied
// to the label indicators Y_k with Theta ~ Q:
//
//   Var(Y_k) = E[Theta_k (1 - Theta_k)] + Var(Theta_k)
//      tu_k  =          au_k             +    eu_k
//
// Aggregate measures are importance-weighted sums over labels.

#include "varunc/error.hpp"
#include "varunc/simplex.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace varunc {

struct LabelTriple {
    double tu = 0.0;
    double au = 0.0;
    double eu = 0.0;
};

struct LabelwiseTriple {
    std::vector<LabelTriple> per_label;

    std::size_t size() const noexcept { return per_label.size(); }
    const LabelTriple& operator[](std::size_t k) const noexcept { return per_label[k]; }
};

struct AggregateTriple {
    double tu = 0.0;
    double au = 0.0;
    double eu = 0.0;
    /// Present when normalization was requested: each component divided by the maximum attainable tu.
    std::optional<LabelTriple> normalized;
};

inline LabelwiseTriple labelwise(const AtomMixture& q) {
    const Categorical m = mean(q);
    const std::size_t num_labels = q.num_labels();
    LabelwiseTriple out;
    out.per_label.resize(num_labels);
    for (std::size_t k = 0; k < num_labels; ++k) {
        LabelTriple& t = out.per_label[k];
        t.tu = m[k] * (1.0 - m[k]);
        for (std::size_t i = 0; i < q.num_atoms(); ++i) {
            const double w = q.weight(i);
            const double x = q.atom(i)[k];
            const double d = x - m[k];
            t.au += w * x * (1.0 - x);
            t.eu += w * d * d;
        }
    }
    return out;
}

/// V(theta) = sum_k w_k theta_k (1 - theta_k); strictly concave on the simplex.
inline double concavity_value(const Categorical& theta, const WeightVector& w) {
    VARUNC_REQUIRE(theta.size() == w.size(), ErrorCode::DimensionMismatch,
                   "theta has K=" + std::to_string(theta.size()) + " but weights have " + std::to_string(w.size()));
    double v = 0.0;
    for (std::size_t k = 0; k < theta.size(); ++k) v += w[k] * theta[k] * (1.0 - theta[k]);
    return v;
}

/// Closed-form maximizer of concavity_value over the simplex:
///   beta_k = (1 - ((K - 2) / w_k) / sum_j (1 / w_j)) / 2.
/// This is the stationary point on the affine hull; when it leaves the simplex
/// (K >= 3 with extreme weight ratios) the constrained maximum lies on the
/// boundary and ErrorCode::ConstrainedMaximum is raised. Use oracles::grid_maximize there.
inline Categorical beta_maximizer(const WeightVector& w) {
    const std::size_t num_labels = w.size();
    VARUNC_REQUIRE(num_labels >= 2, ErrorCode::Validation, "beta_maximizer needs K >= 2");
    double inv_sum = 0.0;
    for (double x : w.values()) inv_sum += 1.0 / x;
    const double km2 = static_cast<double>(num_labels) - 2.0;
    std::vector<double> beta(num_labels);
    for (std::size_t k = 0; k < num_labels; ++k) {
        beta[k] = 0.5 * (1.0 - (km2 / w[k]) / inv_sum);
        VARUNC_REQUIRE(beta[k] >= 0.0, ErrorCode::ConstrainedMaximum,
                       "stationary point has beta_" + std::to_string(k) +
                           " < 0; maximum is on the simplex boundary, use the grid oracle");
    }
    return Categorical(std::move(beta));
}

/// Largest attainable aggregate tu for weights w.
inline double max_total_uncertainty(const WeightVector& w) {
    if (w.is_uniform()) {
        const double num_labels = static_cast<double>(w.size());
        return w[0] * (1.0 - 1.0 / num_labels);
    }
    return concavity_value(beta_maximizer(w), w);
}

/// Weighted sums of a labelwise triple over the given labels.
inline AggregateTriple aggregate_over(const LabelwiseTriple& lw, const WeightVector& w,
                                      std::span<const std::size_t> labels) {
    VARUNC_REQUIRE(lw.size() == w.size(), ErrorCode::DimensionMismatch,
                   "weight vector has length " + std::to_string(w.size()) + ", expected K=" +
                       std::to_string(lw.size()));
    AggregateTriple a;
    for (std::size_t k : labels) {
        VARUNC_REQUIRE(k < lw.size(), ErrorCode::DimensionMismatch, "label index out of range");
        a.tu += w[k] * lw[k].tu;
        a.au += w[k] * lw[k].au;
        a.eu += w[k] * lw[k].eu;
    }
    return a;
}

inline AggregateTriple aggregate(const LabelwiseTriple& lw, const WeightVector& w, bool normalize = false) {
    std::vector<std::size_t> labels(lw.size());
    for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = k;
    AggregateTriple a = aggregate_over(lw, w, labels);
    if (normalize) {
        const double scale = max_total_uncertainty(w);
        a.normalized = LabelTriple{a.tu / scale, a.au / scale, a.eu / scale};
    }
    return a;
}

inline AggregateTriple aggregate(const AtomMixture& q, const WeightVector& w, bool normalize = false) {
    VARUNC_REQUIRE(q.num_labels() == w.size(), ErrorCode::DimensionMismatch,
                   "weight vector has length " + std::to_string(w.size()) + ", expected K=" +
                       std::to_string(q.num_labels()));
    return aggregate(labelwise(q), w, normalize);
}

}  // namespace varunc
