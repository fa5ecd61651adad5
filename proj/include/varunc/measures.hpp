#pragma once

// Registry of the six scalar measures so callers can select them by name.

#include "varunc/entropy.hpp"
#include "varunc/error.hpp"
#include "varunc/simplex.hpp"
#include "varunc/variance.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace varunc {

enum class MeasureId : std::uint8_t { TuEnt, AuEnt, EuEnt, TuVar, AuVar, EuVar };

enum class Family : std::uint8_t { Entropy, Variance };

inline constexpr std::array<MeasureId, 6> kAllMeasures = {MeasureId::TuEnt, MeasureId::AuEnt, MeasureId::EuEnt,
                                                          MeasureId::TuVar, MeasureId::AuVar, MeasureId::EuVar};

inline std::string_view to_string(MeasureId id) noexcept {
    switch (id) {
        case MeasureId::TuEnt: return "tu_ent";
        case MeasureId::AuEnt: return "au_ent";
        case MeasureId::EuEnt: return "eu_ent";
        case MeasureId::TuVar: return "tu_var";
        case MeasureId::AuVar: return "au_var";
        case MeasureId::EuVar: return "eu_var";
    }
    return "?";
}

inline std::string_view to_string(Family f) noexcept { return f == Family::Entropy ? "entropy" : "variance"; }

inline MeasureId parse_measure(std::string_view name) {
    for (MeasureId id : kAllMeasures) {
        if (to_string(id) == name) return id;
    }
    throw Error(ErrorCode::UnknownId, "unknown measure '" + std::string(name) +
                                          "' (expected tu_ent, au_ent, eu_ent, tu_var, au_var, eu_var)");
}

inline Family parse_family(std::string_view name) {
    if (name == "entropy") return Family::Entropy;
    if (name == "variance") return Family::Variance;
    throw Error(ErrorCode::UnknownId, "unknown measure family '" + std::string(name) + "'");
}

inline Family family_of(MeasureId id) noexcept {
    return id == MeasureId::TuEnt || id == MeasureId::AuEnt || id == MeasureId::EuEnt ? Family::Entropy
                                                                                      : Family::Variance;
}

/// Family-independent (tu, au, eu) view.
struct Triple {
    double tu = 0.0;
    double au = 0.0;
    double eu = 0.0;
};

struct MeasureOptions {
    /// Label weights for the variance family; unit weights when empty.
    std::optional<WeightVector> weights;
    /// Divide variance measures by the maximum attainable tu.
    bool normalize = false;
};

inline Triple evaluate_family(Family family, const AtomMixture& q, const MeasureOptions& opts = {}) {
    if (family == Family::Entropy) {
        const EntropyTriple e = entropy_triple(q);
        return {e.tu, e.au, e.eu};
    }
    const WeightVector w = opts.weights ? *opts.weights : WeightVector::uniform(q.num_labels());
    const AggregateTriple a = aggregate(q, w, opts.normalize);
    if (a.normalized) return {a.normalized->tu, a.normalized->au, a.normalized->eu};
    return {a.tu, a.au, a.eu};
}

inline double select(const Triple& t, MeasureId id) noexcept {
    switch (id) {
        case MeasureId::TuEnt:
        case MeasureId::TuVar: return t.tu;
        case MeasureId::AuEnt:
        case MeasureId::AuVar: return t.au;
        case MeasureId::EuEnt:
        case MeasureId::EuVar: return t.eu;
    }
    return 0.0;
}

inline double evaluate(MeasureId id, const AtomMixture& q, const MeasureOptions& opts = {}) {
    return select(evaluate_family(family_of(id), q, opts), id);
}

}  // namespace varunc
