#pragma once

// Distribution modifications used to state the uncertainty axioms:
// mean-preserving spreads, spread-preserving location shifts, and
// spread-preserving center shifts of finite second-order distributions.

#include "varunc/error.hpp"
#include "varunc/random.hpp"
#include "varunc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace varunc {

/// Coordinates this far outside [0, 1] after a translation are treated as round-off and clamped.
inline constexpr double kShiftSlack = 1e-12;

struct SpreadSpec {
    /// Fraction of the largest step that keeps both split atoms in the simplex.
    double epsilon = 1.0;
    std::uint64_t seed = 0;

    void validate() const {
        VARUNC_REQUIRE(epsilon > 0.0 && epsilon <= 1.0, ErrorCode::Validation, "spread epsilon must lie in (0, 1]");
    }
};

namespace detail {

inline Categorical translated(const Categorical& x, std::span<const double> step, double sign) {
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double v = x[k] + sign * step[k];
        VARUNC_REQUIRE(v >= -kShiftSlack && v <= 1.0 + kShiftSlack, ErrorCode::InfeasibleShift,
                       "shifted coordinate " + std::to_string(k) + " = " + std::to_string(v) + " leaves [0, 1]");
        y[k] = std::clamp(v, 0.0, 1.0);
    }
    return Categorical(std::move(y));
}

}  // namespace detail

/// Largest t >= 0 with x + t*d inside the simplex (d sums to zero). Infinity when d == 0.
inline double max_feasible_step(const Categorical& x, std::span<const double> d) {
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (d[k] > 0.0) t = std::min(t, (1.0 - x[k]) / d[k]);
        if (d[k] < 0.0) t = std::min(t, x[k] / -d[k]);
    }
    return t;
}

inline double max_feasible_step(const AtomMixture& q, std::span<const double> d) {
    double t = std::numeric_limits<double>::infinity();
    for (const Categorical& a : q.atoms()) t = std::min(t, max_feasible_step(a, d));
    return t;
}

/// Replaces each positive-weight interior atom x (weight w) by x + s and x - s,
/// each with weight w/2, where s is a seeded sum-zero direction scaled to
/// epsilon times the largest step keeping both endpoints in the simplex.
/// Boundary atoms pass through. The noise Z = +-s has conditional mean zero.
inline AtomMixture mean_preserving_spread(const AtomMixture& q, const SpreadSpec& spec) {
    spec.validate();
    Rng gen = make_rng(spec.seed);
    std::vector<Categorical> atoms;
    std::vector<double> weights;
    atoms.reserve(2 * q.num_atoms());
    weights.reserve(2 * q.num_atoms());
    bool spread_any = false;
    for (std::size_t i = 0; i < q.num_atoms(); ++i) {
        const Categorical& x = q.atom(i);
        const double w = q.weight(i);
        if (w <= 0.0 || !x.interior()) {
            atoms.push_back(x);
            weights.push_back(w);
            continue;
        }
        std::vector<double> step = draw_sum_zero_direction(x.size(), gen);
        std::vector<double> back(step.size());
        for (std::size_t k = 0; k < step.size(); ++k) back[k] = -step[k];
        const double scale = spec.epsilon * std::min(max_feasible_step(x, step), max_feasible_step(x, back));
        for (double& s : step) s *= scale;
        atoms.push_back(detail::translated(x, step, +1.0));
        atoms.push_back(detail::translated(x, step, -1.0));
        weights.push_back(0.5 * w);
        weights.push_back(0.5 * w);
        spread_any = true;
    }
    VARUNC_REQUIRE(spread_any, ErrorCode::CannotSpread,
                   "no positive-weight atom lies strictly inside the simplex");
    return AtomMixture(std::move(atoms), std::move(weights));
}

/// Translates every atom by the nonzero sum-zero vector z.
inline AtomMixture location_shift(const AtomMixture& q, std::span<const double> z) {
    VARUNC_REQUIRE(z.size() == q.num_labels(), ErrorCode::DimensionMismatch,
                   "shift has length " + std::to_string(z.size()) + ", expected K=" + std::to_string(q.num_labels()));
    double sum = 0.0;
    bool nonzero = false;
    for (double v : z) {
        VARUNC_REQUIRE(std::isfinite(v), ErrorCode::Validation, "shift is not finite");
        sum += v;
        nonzero = nonzero || v != 0.0;
    }
    VARUNC_REQUIRE(nonzero, ErrorCode::Validation, "shift vector must be nonzero");
    VARUNC_REQUIRE(std::abs(sum) <= kShiftSlack, ErrorCode::Validation, "shift vector must sum to zero");
    std::vector<Categorical> atoms;
    atoms.reserve(q.num_atoms());
    for (const Categorical& a : q.atoms()) atoms.push_back(detail::translated(a, z, +1.0));
    return AtomMixture(std::move(atoms), q.weights());
}

/// Location shift moving the mean to lambda * mean + (1 - lambda) * target.
/// The target defaults to the simplex barycenter.
inline AtomMixture center_shift(const AtomMixture& q, double lambda,
                                const std::optional<Categorical>& target = std::nullopt) {
    VARUNC_REQUIRE(lambda > 0.0 && lambda < 1.0, ErrorCode::Validation, "center shift lambda must lie in (0, 1)");
    const Categorical goal = target ? *target : Categorical::uniform(q.num_labels());
    VARUNC_REQUIRE(goal.size() == q.num_labels(), ErrorCode::DimensionMismatch, "center target differs in K");
    const Categorical m = mean(q);
    std::vector<double> z(m.size());
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = (1.0 - lambda) * (goal[k] - m[k]);
    return location_shift(q, z);
}

}  // namespace varunc
