#pragma once

// First- and second-order distributions over K class labels.
//
// A Categorical is a point of the probability simplex. A second-order
// distribution is either a finite weighted mixture of Categorical atoms
// (AtomMixture, the empirical case produced by ensembles) or a Dirichlet
// family member (DirichletQ, used only through closed-form moments and
// sampling). All types are immutable after construction.

#include "varunc/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace varunc {

/// Rows within this distance of summing to one are renormalized; beyond it they are rejected.
inline constexpr double kSimplexTolerance = 1e-9;
/// Tolerance on the sum of mixture weights.
inline constexpr double kWeightTolerance = 1e-12;

class Categorical {
public:
    explicit Categorical(std::vector<double> probs, double tolerance = kSimplexTolerance)
        : probs_(std::move(probs)) {
        VARUNC_REQUIRE(probs_.size() >= 2, ErrorCode::Validation,
                       "categorical needs K >= 2, got K=" + std::to_string(probs_.size()));
        double sum = 0.0;
        for (std::size_t k = 0; k < probs_.size(); ++k) {
            const double p = probs_[k];
            VARUNC_REQUIRE(std::isfinite(p) && p >= 0.0, ErrorCode::Validation,
                           "probability " + std::to_string(k) + " is negative or not finite");
            sum += p;
        }
        VARUNC_REQUIRE(std::abs(sum - 1.0) <= tolerance, ErrorCode::Validation,
                       "probabilities sum to " + std::to_string(sum) + ", not 1");
        if (sum != 1.0) {
            for (double& p : probs_) p /= sum;
        }
    }

    Categorical(std::initializer_list<double> probs) : Categorical(std::vector<double>(probs)) {}

    /// Vertex distribution putting all mass on `label`.
    static Categorical vertex(std::size_t num_labels, std::size_t label) {
        VARUNC_REQUIRE(label < num_labels, ErrorCode::Validation, "vertex label out of range");
        std::vector<double> p(num_labels, 0.0);
        p[label] = 1.0;
        return Categorical(std::move(p));
    }

    static Categorical uniform(std::size_t num_labels) {
        VARUNC_REQUIRE(num_labels >= 2, ErrorCode::Validation, "categorical needs K >= 2");
        return Categorical(std::vector<double>(num_labels, 1.0 / static_cast<double>(num_labels)));
    }

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t k) const noexcept { return probs_[k]; }
    std::span<const double> probs() const noexcept { return probs_; }
    auto begin() const noexcept { return probs_.begin(); }
    auto end() const noexcept { return probs_.end(); }

    /// True when every coordinate lies strictly inside (0, 1).
    bool interior() const noexcept {
        return std::all_of(probs_.begin(), probs_.end(), [](double p) { return p > 0.0 && p < 1.0; });
    }

    /// Index of the largest probability; ties go to the lowest index.
    std::size_t argmax() const noexcept {
        return static_cast<std::size_t>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
    }

    friend bool operator==(const Categorical&, const Categorical&) = default;

private:
    std::vector<double> probs_;
};

/// Finite second-order distribution: sum_i weight_i * delta_{atom_i}.
/// Identical atoms are kept as given.
class AtomMixture {
public:
    AtomMixture(std::vector<Categorical> atoms, std::vector<double> weights)
        : atoms_(std::move(atoms)), weights_(std::move(weights)) {
        VARUNC_REQUIRE(!atoms_.empty(), ErrorCode::Validation, "mixture needs at least one atom");
        VARUNC_REQUIRE(atoms_.size() == weights_.size(), ErrorCode::DimensionMismatch,
                       "mixture has " + std::to_string(atoms_.size()) + " atoms but " +
                           std::to_string(weights_.size()) + " weights");
        const std::size_t k = atoms_.front().size();
        // Compensated summation: n copies of 1/n must pass for large n.
        double sum = 0.0;
        double carry = 0.0;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            VARUNC_REQUIRE(atoms_[i].size() == k, ErrorCode::DimensionMismatch,
                           "atom " + std::to_string(i) + " has K=" + std::to_string(atoms_[i].size()) +
                               ", expected " + std::to_string(k));
            VARUNC_REQUIRE(std::isfinite(weights_[i]) && weights_[i] >= 0.0, ErrorCode::Validation,
                           "mixture weight " + std::to_string(i) + " is negative or not finite");
            const double t = sum + weights_[i];
            carry += std::abs(sum) >= std::abs(weights_[i]) ? (sum - t) + weights_[i] : (weights_[i] - t) + sum;
            sum = t;
        }
        sum += carry;
        VARUNC_REQUIRE(std::abs(sum - 1.0) <= kWeightTolerance, ErrorCode::Validation,
                       "mixture weights sum to " + std::to_string(sum) + ", not 1");
    }

    static AtomMixture dirac(Categorical theta) { return AtomMixture({std::move(theta)}, {1.0}); }

    std::size_t num_labels() const noexcept { return atoms_.front().size(); }
    std::size_t num_atoms() const noexcept { return atoms_.size(); }
    const std::vector<Categorical>& atoms() const noexcept { return atoms_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const Categorical& atom(std::size_t i) const noexcept { return atoms_[i]; }
    double weight(std::size_t i) const noexcept { return weights_[i]; }

    /// True when all positive-weight atoms are identical, i.e. the mixture is a Dirac measure.
    bool degenerate() const noexcept {
        const Categorical* first = nullptr;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (weights_[i] <= 0.0) continue;
            if (first == nullptr) {
                first = &atoms_[i];
            } else if (!(*first == atoms_[i])) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<Categorical> atoms_;
    std::vector<double> weights_;
};

class DirichletQ {
public:
    explicit DirichletQ(std::vector<double> alpha) : alpha_(std::move(alpha)) {
        VARUNC_REQUIRE(alpha_.size() >= 2, ErrorCode::Validation, "Dirichlet needs K >= 2");
        for (double a : alpha_) {
            VARUNC_REQUIRE(std::isfinite(a) && a > 0.0, ErrorCode::Validation,
                           "Dirichlet concentrations must be finite and > 0");
        }
    }

    std::size_t num_labels() const noexcept { return alpha_.size(); }
    std::span<const double> alpha() const noexcept { return alpha_; }
    double alpha0() const noexcept { return std::accumulate(alpha_.begin(), alpha_.end(), 0.0); }

private:
    std::vector<double> alpha_;
};

/// Per-label importance weights, all strictly positive.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {
        VARUNC_REQUIRE(!w_.empty(), ErrorCode::Validation, "weight vector is empty");
        for (double x : w_) {
            VARUNC_REQUIRE(std::isfinite(x) && x > 0.0, ErrorCode::Validation,
                           "label weights must be finite and > 0");
        }
    }

    WeightVector(std::initializer_list<double> w) : WeightVector(std::vector<double>(w)) {}

    static WeightVector uniform(std::size_t num_labels) { return WeightVector(std::vector<double>(num_labels, 1.0)); }

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t k) const noexcept { return w_[k]; }
    std::span<const double> values() const noexcept { return w_; }

    bool is_uniform() const noexcept {
        return std::all_of(w_.begin(), w_.end(), [&](double x) { return x == w_.front(); });
    }

private:
    std::vector<double> w_;
};

/// Mean first-order distribution E_Q[Theta].
inline Categorical mean(const AtomMixture& q) {
    if (q.degenerate()) {
        for (std::size_t i = 0; i < q.num_atoms(); ++i) {
            if (q.weight(i) > 0.0) return q.atom(i);
        }
    }
    std::vector<double> m(q.num_labels(), 0.0);
    for (std::size_t i = 0; i < q.num_atoms(); ++i) {
        const double w = q.weight(i);
        if (w == 0.0) continue;
        const Categorical& a = q.atom(i);
        for (std::size_t k = 0; k < m.size(); ++k) m[k] += w * a[k];
    }
    return Categorical(std::move(m));
}

inline Categorical mean(const DirichletQ& q) {
    const double a0 = q.alpha0();
    std::vector<double> m(q.alpha().begin(), q.alpha().end());
    for (double& x : m) x /= a0;
    return Categorical(std::move(m));
}

/// Uniform-weight empirical second-order distribution of ensemble outputs.
inline AtomMixture from_ensemble(std::span<const Categorical> members) {
    VARUNC_REQUIRE(!members.empty(), ErrorCode::Validation, "ensemble has no members");
    const std::size_t k = members.front().size();
    for (std::size_t i = 0; i < members.size(); ++i) {
        VARUNC_REQUIRE(members[i].size() == k, ErrorCode::DimensionMismatch,
                       "ensemble member " + std::to_string(i) + " has K=" + std::to_string(members[i].size()) +
                           ", expected " + std::to_string(k));
    }
    const double w = 1.0 / static_cast<double>(members.size());
    return AtomMixture(std::vector<Categorical>(members.begin(), members.end()),
                       std::vector<double>(members.size(), w));
}

/// sum_k lambda_k * delta_{e_k}: a mixture of second-order Diracs on the K vertex distributions.
inline AtomMixture dirac_mixture(std::span<const double> lambdas) {
    // Reuses the simplex validation: nonnegative, sums to one.
    const Categorical lam(std::vector<double>(lambdas.begin(), lambdas.end()));
    std::vector<Categorical> atoms;
    atoms.reserve(lam.size());
    for (std::size_t k = 0; k < lam.size(); ++k) atoms.push_back(Categorical::vertex(lam.size(), k));
    return AtomMixture(std::move(atoms), std::vector<double>(lam.begin(), lam.end()));
}

}  // namespace varunc
