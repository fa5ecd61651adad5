#pragma once

// Entropy-based total / aleatoric / epistemic uncertainty (in bits):
//   TU = H(mean(Q)),  AU = E_Q[H(Theta)],  EU = E_Q[KL(Theta || mean(Q))] = I(Y; Theta).

#include "varunc/error.hpp"
#include "varunc/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace varunc {

struct EntropyTriple {
    double tu = 0.0;
    double au = 0.0;
    double eu = 0.0;
};

namespace detail {

// -p log2 p with 0 log 0 = 0.
inline double plogp(double p) noexcept { return p > 0.0 ? -p * std::log2(p) : 0.0; }

inline double entropy_over(std::span<const double> p, std::span<const std::size_t> labels) noexcept {
    double h = 0.0;
    for (std::size_t k : labels) h += plogp(p[k]);
    return h;
}

inline double kl_over(std::span<const double> p, std::span<const double> q,
                      std::span<const std::size_t> labels) noexcept {
    double d = 0.0;
    for (std::size_t k : labels) {
        if (p[k] == 0.0) continue;
        if (q[k] == 0.0) return std::numeric_limits<double>::infinity();
        d += p[k] * std::log2(p[k] / q[k]);
    }
    return d;
}

inline std::vector<std::size_t> all_labels(std::size_t k) {
    std::vector<std::size_t> labels(k);
    for (std::size_t i = 0; i < k; ++i) labels[i] = i;
    return labels;
}

}  // namespace detail

/// Shannon entropy in bits.
inline double shannon_entropy(const Categorical& theta) {
    double h = 0.0;
    for (double p : theta) h += detail::plogp(p);
    return h;
}

/// KL(p || q) in bits. Returns +infinity when p puts mass where q has none.
inline double kl_divergence(const Categorical& p, const Categorical& q) {
    VARUNC_REQUIRE(p.size() == q.size(), ErrorCode::DimensionMismatch, "KL arguments differ in K");
    const auto labels = detail::all_labels(p.size());
    return detail::kl_over(p.probs(), q.probs(), labels);
}

/// Entropy terms restricted to a subset of labels, summed over the original
/// (unrenormalized) coordinates. With the full label set this is entropy_triple.
inline EntropyTriple entropy_triple_restricted(const AtomMixture& q, std::span<const std::size_t> labels) {
    for (std::size_t k : labels) {
        VARUNC_REQUIRE(k < q.num_labels(), ErrorCode::DimensionMismatch, "label index out of range");
    }
    const Categorical m = mean(q);
    EntropyTriple t;
    t.tu = detail::entropy_over(m.probs(), labels);
    for (std::size_t i = 0; i < q.num_atoms(); ++i) {
        const double w = q.weight(i);
        // A zero-weight atom may leave the mean's support; it contributes nothing.
        if (w == 0.0) continue;
        t.au += w * detail::entropy_over(q.atom(i).probs(), labels);
        t.eu += w * detail::kl_over(q.atom(i).probs(), m.probs(), labels);
    }
    return t;
}

inline EntropyTriple entropy_triple(const AtomMixture& q) {
    const auto labels = detail::all_labels(q.num_labels());
    return entropy_triple_restricted(q, labels);
}

}  // namespace varunc
