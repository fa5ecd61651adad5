#pragma once

#include "varunc/simplex.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace varunc::harness {

/// One instance: its true label and the first-order predictions of M ensemble members.
struct PredictionRecord {
    std::string id;
    std::size_t label = 0;
    std::vector<Categorical> members;
    /// Optional partition tag ("train", "test", "ood") carried by JSONL streams.
    std::string split;

    std::size_t num_labels() const noexcept { return members.front().size(); }
    AtomMixture second_order() const { return from_ensemble(members); }

    /// Argmax of the ensemble mean, ties to the lowest label.
    std::size_t predicted() const { return mean(second_order()).argmax(); }
    bool correct() const { return predicted() == label; }
};

}  // namespace varunc::harness
