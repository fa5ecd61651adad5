#pragma once

// Numerical falsifier for the uncertainty axioms A0, A1, A3-A7 and for the
// weak mean-preserving-spread property of entropy EU. Each case draws its own
// generator from derive_seed(config.seed, case_index), so a report is a pure
// function of (axiom, family, config).
//
// Checks, with "margin < 0" meaning a violation:
//   A0  tu, au, eu >= -1e-12
//   A1  eu <= 1e-12 on Dirac measures (possibly split into identical atoms)
//       and eu > 0 on mixtures of distinct atoms
//   A3  eu and tu under a mean-preserving spread: strict (> 1e-12) for the
//       variance family, weak (>= -1e-10) for the entropy family
//   A4  au and tu strictly increase under a center shift toward the barycenter
//       (unit weights); informational for the entropy family
//   A5  |delta eu| <= 1e-12 under a location shift; the entropy family is
//       expected to violate this and its count is reported, not asserted
//   A6  au of a vertex Dirac mixture is exactly 0
//   A7  totals over a label partition: equality (1e-12) for variance,
//       tu <= tu_1 + tu_2 (+1e-10) for entropy, likewise au and eu

#include "varunc/entropy.hpp"
#include "varunc/error.hpp"
#include "varunc/format.hpp"
#include "varunc/measures.hpp"
#include "varunc/oracles.hpp"
#include "varunc/random.hpp"
#include "varunc/simplex.hpp"
#include "varunc/transforms.hpp"
#include "varunc/variance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace varunc::axioms {

inline constexpr double kExactMargin = 1e-12;
inline constexpr double kLooseMargin = 1e-10;

enum class AxiomId : std::uint8_t { A0, A1, A3, A4, A5, A6, A7 };

inline constexpr std::array<AxiomId, 7> kAllAxioms = {AxiomId::A0, AxiomId::A1, AxiomId::A3, AxiomId::A4,
                                                      AxiomId::A5, AxiomId::A6, AxiomId::A7};

inline std::string_view to_string(AxiomId id) noexcept {
    constexpr std::array<std::string_view, 7> names = {"A0", "A1", "A3", "A4", "A5", "A6", "A7"};
    return names[static_cast<std::size_t>(id)];
}

inline AxiomId parse_axiom(std::string_view name) {
    for (AxiomId id : kAllAxioms) {
        if (to_string(id) == name) return id;
    }
    throw Error(ErrorCode::UnknownId, "unknown axiom '" + std::string(name) + "' (A2 is probed, not checked)");
}

/// What the suite expects of an (axiom, family) pair.
enum class Expectation : std::uint8_t { Holds, ExpectedViolation, Informational };

inline std::string_view to_string(Expectation e) noexcept {
    switch (e) {
        case Expectation::Holds: return "holds";
        case Expectation::ExpectedViolation: return "expected-violation";
        case Expectation::Informational: return "informational";
    }
    return "?";
}

inline Expectation expectation(AxiomId axiom, Family family) noexcept {
    if (family == Family::Variance) return Expectation::Holds;
    switch (axiom) {
        case AxiomId::A4: return Expectation::Informational;
        case AxiomId::A5: return Expectation::ExpectedViolation;
        default: return Expectation::Holds;
    }
}

struct GeneratorConfig {
    std::size_t min_labels = 2;
    std::size_t max_labels = 6;
    std::size_t min_atoms = 1;
    std::size_t max_atoms = 16;
    std::size_t cases = 1000;
    std::uint64_t seed = 0;
    /// Concentration of the symmetric Dirichlet the atoms are drawn from.
    double atom_concentration = 1.0;
    /// Spread epsilon is drawn from [min_epsilon, 1] unless fixed.
    double min_epsilon = 0.05;
    std::optional<double> fixed_epsilon;
    /// Prepend the U[0.3,0.7] -> U[0.6,1.0] shift pair to the A5 cases.
    bool include_witness = true;

    void validate() const {
        VARUNC_REQUIRE(min_labels >= 2 && min_labels <= max_labels, ErrorCode::Validation,
                       "generator needs 2 <= min_labels <= max_labels");
        VARUNC_REQUIRE(min_atoms >= 1 && min_atoms <= max_atoms, ErrorCode::Validation,
                       "generator needs 1 <= min_atoms <= max_atoms");
        VARUNC_REQUIRE(atom_concentration > 0.0, ErrorCode::Validation, "atom concentration must be > 0");
        VARUNC_REQUIRE(min_epsilon >= 0.0 && min_epsilon <= 1.0, ErrorCode::Validation,
                       "min_epsilon must lie in [0, 1]");
    }
};

struct AxiomReport {
    std::string axiom;
    Family family = Family::Variance;
    Expectation expect = Expectation::Holds;
    std::size_t cases = 0;
    std::size_t skipped = 0;
    std::size_t violations = 0;
    /// Smallest margin seen over all checks; negative values are violations.
    double worst_margin = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    /// Violation counts per checked component (e.g. "eu", "tu").
    std::vector<std::pair<std::string, std::size_t>> breakdown;

    bool passed() const noexcept { return expect != Expectation::Holds || violations == 0; }
};

/// One line, fields in fixed order:
/// axiom family expectation cases skipped violations worst_margin seed breakdown status
inline std::string to_record(const AxiomReport& r) {
    std::string line = "axiom=" + r.axiom + " family=" + std::string(to_string(r.family)) +
                       " expectation=" + std::string(to_string(r.expect)) + " cases=" + std::to_string(r.cases) +
                       " skipped=" + std::to_string(r.skipped) + " violations=" + std::to_string(r.violations) +
                       " worst_margin=" + format_double(r.worst_margin) + " seed=" + std::to_string(r.seed) +
                       " breakdown=";
    for (std::size_t i = 0; i < r.breakdown.size(); ++i) {
        line += (i ? "," : "") + r.breakdown[i].first + ":" + std::to_string(r.breakdown[i].second);
    }
    if (r.breakdown.empty()) line += "-";
    line += " status=";
    if (r.expect == Expectation::Holds) {
        line += r.violations == 0 ? "PASS" : "FAIL";
    } else if (r.expect == Expectation::ExpectedViolation) {
        line += r.violations > 0 ? "VIOLATED-AS-EXPECTED" : "NOT-VIOLATED";
    } else {
        line += "INFO";
    }
    return line;
}

namespace detail {

class Tally {
public:
    explicit Tally(std::vector<std::string> components) {
        for (auto& c : components) counts_.emplace_back(std::move(c), 0);
    }

    /// Records one checked quantity; returns false on violation.
    bool check(std::size_t component, double margin, bool ok) {
        worst_ = std::min(worst_, margin);
        if (!ok) ++counts_[component].second;
        return ok;
    }

    bool at_least(std::size_t component, double value, double threshold) {
        return check(component, value - threshold, value >= threshold);
    }

    bool strictly_above(std::size_t component, double value, double threshold) {
        return check(component, value - threshold, value > threshold);
    }

    bool within(std::size_t component, double diff, double tolerance) {
        return check(component, tolerance - std::abs(diff), std::abs(diff) <= tolerance);
    }

    void finish(AxiomReport& r) const {
        r.worst_margin = worst_;
        r.breakdown = counts_;
    }

private:
    std::vector<std::pair<std::string, std::size_t>> counts_;
    double worst_ = std::numeric_limits<double>::infinity();
};

inline std::size_t uniform_index(Rng& gen, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen);
}

inline Categorical random_atom(Rng& gen, std::size_t num_labels, double concentration) {
    const std::vector<double> alpha(num_labels, concentration);
    return Categorical(draw_dirichlet(alpha, gen));
}

inline std::vector<double> random_mixture_weights(Rng& gen, std::size_t n) {
    const std::vector<double> ones(n, 1.0);
    std::vector<double> w = draw_dirichlet(ones, gen);
    // Dirichlet draws sum to 1 up to round-off; pin the total to the mixture tolerance.
    double total = 0.0;
    for (double x : w) total += x;
    for (double& x : w) x /= total;
    return w;
}

inline AtomMixture random_mixture(Rng& gen, const GeneratorConfig& cfg, std::size_t num_labels,
                                  std::size_t min_atoms) {
    const std::size_t n = uniform_index(gen, std::max(min_atoms, cfg.min_atoms), std::max(min_atoms, cfg.max_atoms));
    std::vector<Categorical> atoms;
    for (std::size_t i = 0; i < n; ++i) atoms.push_back(random_atom(gen, num_labels, cfg.atom_concentration));
    return AtomMixture(std::move(atoms), random_mixture_weights(gen, n));
}

inline WeightVector random_label_weights(Rng& gen, std::size_t num_labels) {
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    std::vector<double> w(num_labels);
    for (double& x : w) x = dist(gen);
    return WeightVector(std::move(w));
}

inline Triple measure(Family family, const AtomMixture& q, const WeightVector& w) {
    return evaluate_family(family, q, MeasureOptions{w, false});
}

// Variance triple of the unrenormalized restriction of Q to `labels`, computed directly.
inline Triple restricted_variance(const AtomMixture& q, const WeightVector& w, std::span<const std::size_t> labels) {
    Triple t;
    for (std::size_t k : labels) {
        double m = 0.0;
        for (std::size_t i = 0; i < q.num_atoms(); ++i) m += q.weight(i) * q.atom(i)[k];
        double au = 0.0;
        double eu = 0.0;
        for (std::size_t i = 0; i < q.num_atoms(); ++i) {
            const double x = q.atom(i)[k];
            au += q.weight(i) * x * (1.0 - x);
            eu += q.weight(i) * (x - m) * (x - m);
        }
        t.tu += w[k] * m * (1.0 - m);
        t.au += w[k] * au;
        t.eu += w[k] * eu;
    }
    return t;
}

inline Triple restricted(Family family, const AtomMixture& q, const WeightVector& w,
                         std::span<const std::size_t> labels) {
    if (family == Family::Variance) return restricted_variance(q, w, labels);
    const EntropyTriple e = entropy_triple_restricted(q, labels);
    return {e.tu, e.au, e.eu};
}

// Bernoulli panels (d) -> (e): U[0.3,0.7] translated by (0.3, -0.3).
inline std::pair<AtomMixture, std::vector<double>> witness_shift(std::uint64_t seed) {
    return {oracles::sample_q(oracles::SamplerSpec::uniform_interval(0.3, 0.7, 1000, seed)), {0.3, -0.3}};
}

}  // namespace detail

inline AxiomReport check_axiom(AxiomId axiom, Family family, const GeneratorConfig& cfg = {}) {
    cfg.validate();
    AxiomReport report;
    report.axiom = std::string(to_string(axiom));
    report.family = family;
    report.expect = expectation(axiom, family);
    report.seed = cfg.seed;

    const bool variance = family == Family::Variance;
    const double eps_margin = variance ? kExactMargin : kLooseMargin;

    std::vector<std::string> components;
    switch (axiom) {
        case AxiomId::A0: components = {"tu", "au", "eu"}; break;
        case AxiomId::A1: components = {"dirac", "spread"}; break;
        case AxiomId::A3:
        case AxiomId::A5: components = {"eu", "tu"}; break;
        case AxiomId::A4: components = {"au", "tu"}; break;
        case AxiomId::A6: components = {"au"}; break;
        case AxiomId::A7: components = {"tu", "au", "eu"}; break;
    }
    if (axiom == AxiomId::A5) components = {"eu"};
    detail::Tally tally(components);

    for (std::size_t c = 0; c < cfg.cases; ++c) {
        Rng gen = make_rng(derive_seed(cfg.seed, c));
        const std::size_t num_labels = detail::uniform_index(gen, cfg.min_labels, cfg.max_labels);
        bool case_ok = true;

        switch (axiom) {
            case AxiomId::A0: {
                const AtomMixture q = detail::random_mixture(gen, cfg, num_labels, 1);
                const WeightVector w = detail::random_label_weights(gen, num_labels);
                const Triple t = detail::measure(family, q, w);
                case_ok &= tally.at_least(0, t.tu, -kExactMargin);
                case_ok &= tally.at_least(1, t.au, -kExactMargin);
                case_ok &= tally.at_least(2, t.eu, -kExactMargin);
                break;
            }
            case AxiomId::A1: {
                const WeightVector w = detail::random_label_weights(gen, num_labels);
                const Categorical theta = detail::random_atom(gen, num_labels, cfg.atom_concentration);
                const std::size_t copies = detail::uniform_index(gen, 1, cfg.max_atoms);
                const AtomMixture dirac(std::vector<Categorical>(copies, theta),
                                        detail::random_mixture_weights(gen, copies));
                const Triple d = detail::measure(family, dirac, w);
                case_ok &= tally.check(0, kExactMargin - d.eu, d.eu <= kExactMargin);
                const AtomMixture spread = detail::random_mixture(gen, cfg, num_labels, 2);
                const Triple s = detail::measure(family, spread, w);
                case_ok &= tally.strictly_above(1, s.eu, 0.0);
                break;
            }
            case AxiomId::A3: {
                const AtomMixture q = detail::random_mixture(gen, cfg, num_labels, 1);
                const WeightVector w = detail::random_label_weights(gen, num_labels);
                std::uniform_real_distribution<double> eps(cfg.min_epsilon, 1.0);
                SpreadSpec spec{cfg.fixed_epsilon ? *cfg.fixed_epsilon : eps(gen), gen()};
                std::optional<AtomMixture> spread;
                try {
                    spread = mean_preserving_spread(q, spec);
                } catch (const Error&) {
                    ++report.skipped;
                    continue;
                }
                const Triple before = detail::measure(family, q, w);
                const Triple after = detail::measure(family, *spread, w);
                if (variance) {
                    case_ok &= tally.strictly_above(0, after.eu - before.eu, kExactMargin);
                    case_ok &= tally.strictly_above(1, after.tu - before.tu, kExactMargin);
                } else {
                    case_ok &= tally.at_least(0, after.eu - before.eu, -kLooseMargin);
                    case_ok &= tally.at_least(1, after.tu - before.tu, -kLooseMargin);
                }
                break;
            }
            case AxiomId::A4: {
                const WeightVector w = WeightVector::uniform(num_labels);
                // Redraw until the barycenter direction admits a non-negligible feasible step.
                for (;;) {
                    const AtomMixture q = detail::random_mixture(gen, cfg, num_labels, 1);
                    const Categorical m = mean(q);
                    std::vector<double> d(num_labels);
                    for (std::size_t k = 0; k < num_labels; ++k) d[k] = 1.0 / static_cast<double>(num_labels) - m[k];
                    const double t_max = std::min(1.0, max_feasible_step(q, d));
                    if (!(t_max > 1e-6)) continue;
                    const double frac = std::uniform_real_distribution<double>(0.05, 0.95)(gen) * t_max;
                    const AtomMixture shifted = center_shift(q, 1.0 - frac);
                    const Triple before = detail::measure(family, q, w);
                    const Triple after = detail::measure(family, shifted, w);
                    case_ok &= tally.strictly_above(0, after.au - before.au, eps_margin);
                    case_ok &= tally.strictly_above(1, after.tu - before.tu, eps_margin);
                    break;
                }
                break;
            }
            case AxiomId::A5: {
                const WeightVector w = detail::random_label_weights(gen, num_labels);
                std::optional<AtomMixture> q;
                std::vector<double> z;
                if (c == 0 && cfg.include_witness) {
                    auto [witness, shift] = detail::witness_shift(cfg.seed);
                    q = std::move(witness);
                    z = std::move(shift);
                    const Triple before = detail::measure(family, *q, WeightVector::uniform(2));
                    const Triple after = detail::measure(family, location_shift(*q, z), WeightVector::uniform(2));
                    case_ok &= tally.within(0, after.eu - before.eu, eps_margin);
                    break;
                }
                for (;;) {
                    q = detail::random_mixture(gen, cfg, num_labels, 1);
                    z = draw_sum_zero_direction(num_labels, gen);
                    const double t_max = max_feasible_step(*q, z);
                    if (!(t_max > 1e-9)) continue;
                    const double t = std::uniform_real_distribution<double>(0.05, 1.0)(gen) * t_max;
                    for (double& v : z) v *= t;
                    break;
                }
                const Triple before = detail::measure(family, *q, w);
                const Triple after = detail::measure(family, location_shift(*q, z), w);
                case_ok &= tally.within(0, after.eu - before.eu, eps_margin);
                break;
            }
            case AxiomId::A6: {
                const std::vector<double> ones(num_labels, 1.0);
                const std::vector<double> lambdas = draw_dirichlet(ones, gen);
                const WeightVector w = detail::random_label_weights(gen, num_labels);
                const Triple t = detail::measure(family, dirac_mixture(lambdas), w);
                case_ok &= tally.check(0, -std::abs(t.au), t.au == 0.0);
                break;
            }
            case AxiomId::A7: {
                const AtomMixture q = detail::random_mixture(gen, cfg, num_labels, 1);
                const WeightVector w = detail::random_label_weights(gen, num_labels);
                // Random split into two nonempty label sets.
                std::vector<std::size_t> perm(num_labels);
                for (std::size_t k = 0; k < num_labels; ++k) perm[k] = k;
                std::shuffle(perm.begin(), perm.end(), gen);
                const std::size_t cut = detail::uniform_index(gen, 1, num_labels - 1);
                std::vector<std::size_t> first(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(cut));
                std::vector<std::size_t> second(perm.begin() + static_cast<std::ptrdiff_t>(cut), perm.end());
                const Triple whole = detail::measure(family, q, w);
                const Triple p1 = detail::restricted(family, q, w, first);
                const Triple p2 = detail::restricted(family, q, w, second);
                const std::array<double, 3> lhs = {whole.tu, whole.au, whole.eu};
                const std::array<double, 3> rhs = {p1.tu + p2.tu, p1.au + p2.au, p1.eu + p2.eu};
                for (std::size_t j = 0; j < 3; ++j) {
                    if (variance) {
                        case_ok &= tally.within(j, lhs[j] - rhs[j], kExactMargin);
                    } else {
                        case_ok &= tally.at_least(j, rhs[j] - lhs[j], -kLooseMargin);
                    }
                }
                break;
            }
        }
        ++report.cases;
        if (!case_ok) ++report.violations;
    }
    tally.finish(report);
    return report;
}

/// Entropy EU never decreases under a mean-preserving spread (weak, 1e-10 margin).
inline AxiomReport check_proposition_mps_entropy(const GeneratorConfig& cfg = {}) {
    cfg.validate();
    AxiomReport report;
    report.axiom = "MPS-entropy";
    report.family = Family::Entropy;
    report.expect = Expectation::Holds;
    report.seed = cfg.seed;
    detail::Tally tally({"eu"});
    for (std::size_t c = 0; c < cfg.cases; ++c) {
        Rng gen = make_rng(derive_seed(cfg.seed, c));
        const std::size_t num_labels = detail::uniform_index(gen, cfg.min_labels, cfg.max_labels);
        const AtomMixture q = detail::random_mixture(gen, cfg, num_labels, 1);
        std::uniform_real_distribution<double> eps(cfg.min_epsilon, 1.0);
        const SpreadSpec spec{cfg.fixed_epsilon ? *cfg.fixed_epsilon : eps(gen), gen()};
        std::optional<AtomMixture> spread;
        try {
            spread = mean_preserving_spread(q, spec);
        } catch (const Error&) {
            ++report.skipped;
            continue;
        }
        const double delta = entropy_triple(*spread).eu - entropy_triple(q).eu;
        ++report.cases;
        if (!tally.at_least(0, delta, -kLooseMargin)) ++report.violations;
    }
    tally.finish(report);
    return report;
}

/// Values behind the (unchecked) maximality axiom: the uniform distribution on the
/// simplex versus the equal-weight mixture of vertex Diracs.
struct MaximalityProbe {
    Family family = Family::Variance;
    std::size_t num_labels = 0;
    Triple uniform;
    Triple vertex_mixture;
};

inline MaximalityProbe probe_maximality(Family family, std::size_t num_labels, std::size_t samples = 100000,
                                        std::uint64_t seed = 0) {
    const DirichletQ flat(std::vector<double>(num_labels, 1.0));
    const std::vector<double> lambdas(num_labels, 1.0 / static_cast<double>(num_labels));
    MaximalityProbe p;
    p.family = family;
    p.num_labels = num_labels;
    p.uniform = evaluate_family(family, oracles::sample_dirichlet(flat, samples, seed));
    p.vertex_mixture = evaluate_family(family, dirac_mixture(lambdas));
    return p;
}

}  // namespace varunc::axioms
