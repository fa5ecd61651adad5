#pragma once

// Desk-scale stand-in for a deep ensemble: isotropic Gaussian class clusters,
// M linear-softmax classifiers trained by full-batch gradient descent on
// bootstrap resamples, and a held-out far cluster as out-of-distribution data.

#include "varunc/error.hpp"
#include "varunc/format.hpp"
#include "varunc/harness/records.hpp"
#include "varunc/random.hpp"
#include "varunc/simplex.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace varunc::harness {

struct SyntheticConfig {
    std::size_t num_classes = 3;
    std::size_t dim = 2;
    /// num_classes x dim cluster centers.
    std::vector<std::vector<double>> class_means;
    /// Per-class isotropic standard deviation.
    std::vector<double> class_sigma;
    std::vector<double> ood_mean;
    double ood_sigma = 1.0;
    std::size_t n_train = 600;
    std::size_t n_test = 600;
    std::size_t n_ood = 600;
    std::size_t ensemble_size = 5;
    /// Bootstrap resample size as a fraction of n_train.
    double bootstrap_fraction = 1.0;
    std::size_t steps = 200;
    double learning_rate = 0.5;
    double l2 = 0.0;
    std::uint64_t seed = 0;

    /// Class means evenly spaced on a circle of radius 4 (pairwise distance 4*sqrt(3) ~ 6.9 sigma
    /// for three classes); OoD cluster on the bisector between classes 0 and 1 at radius 14,
    /// at least 12 sigma from every class mean.
    static SyntheticConfig defaults(std::uint64_t seed = 0) {
        SyntheticConfig c;
        c.seed = seed;
        const double radius = 4.0;
        for (std::size_t k = 0; k < c.num_classes; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(c.num_classes);
            c.class_means.push_back({radius * std::cos(angle), radius * std::sin(angle)});
        }
        c.class_sigma.assign(c.num_classes, 1.0);
        const double ood_angle = std::numbers::pi / static_cast<double>(c.num_classes);
        c.ood_mean = {14.0 * std::cos(ood_angle), 14.0 * std::sin(ood_angle)};
        return c;
    }

    void validate() const {
        VARUNC_REQUIRE(num_classes >= 2, ErrorCode::Validation, "synthetic config needs >= 2 classes");
        VARUNC_REQUIRE(dim >= 1, ErrorCode::Validation, "synthetic config needs dim >= 1");
        VARUNC_REQUIRE(class_means.size() == num_classes && class_sigma.size() == num_classes, ErrorCode::Validation,
                       "synthetic config needs one mean and one sigma per class");
        for (const auto& m : class_means) {
            VARUNC_REQUIRE(m.size() == dim, ErrorCode::Validation, "class mean has the wrong dimension");
        }
        for (double s : class_sigma) VARUNC_REQUIRE(s > 0.0, ErrorCode::Validation, "class sigma must be > 0");
        VARUNC_REQUIRE(ood_mean.size() == dim && ood_sigma > 0.0, ErrorCode::Validation, "invalid OoD cluster");
        VARUNC_REQUIRE(n_train >= 1 && n_test >= 1 && n_ood >= 1 && ensemble_size >= 1 && steps >= 1,
                       ErrorCode::Validation, "synthetic counts must be >= 1");
        VARUNC_REQUIRE(bootstrap_fraction > 0.0, ErrorCode::Validation, "bootstrap fraction must be > 0");
        VARUNC_REQUIRE(learning_rate > 0.0 && std::isfinite(learning_rate), ErrorCode::Validation,
                       "learning rate must be > 0");
        VARUNC_REQUIRE(l2 >= 0.0, ErrorCode::Validation, "l2 penalty must be >= 0");
    }

    nlohmann::json to_json() const {
        return {{"num_classes", num_classes}, {"dim", dim},
                {"class_means", class_means}, {"class_sigma", class_sigma},
                {"ood_mean", ood_mean},       {"ood_sigma", ood_sigma},
                {"n_train", n_train},         {"n_test", n_test},
                {"n_ood", n_ood},             {"ensemble_size", ensemble_size},
                {"bootstrap_fraction", bootstrap_fraction}, {"steps", steps},
                {"learning_rate", learning_rate}, {"l2", l2},
                {"seed", seed}};
    }
};

struct Sample {
    std::vector<double> x;
    std::size_t label = 0;
};

/// Linear softmax classifier: logits = W x + b.
class LinearSoftmax {
public:
    LinearSoftmax(std::size_t num_classes, std::size_t dim)
        : num_classes_(num_classes), dim_(dim), weights_(num_classes * dim, 0.0), bias_(num_classes, 0.0) {}

    std::vector<double> predict(const std::vector<double>& x) const {
        std::vector<double> z(num_classes_);
        for (std::size_t c = 0; c < num_classes_; ++c) {
            double v = bias_[c];
            for (std::size_t j = 0; j < dim_; ++j) v += weights_[c * dim_ + j] * x[j];
            z[c] = v;
        }
        const double zmax = *std::max_element(z.begin(), z.end());
        double sum = 0.0;
        for (double& v : z) {
            v = std::exp(v - zmax);
            sum += v;
        }
        for (double& v : z) v /= sum;
        return z;
    }

    /// Full-batch gradient descent on mean cross-entropy plus l2/2 * |W|^2.
    void fit(const std::vector<Sample>& data, std::size_t steps, double learning_rate, double l2) {
        const double inv_n = 1.0 / static_cast<double>(data.size());
        std::vector<double> grad_w(weights_.size());
        std::vector<double> grad_b(bias_.size());
        for (std::size_t step = 0; step < steps; ++step) {
            std::fill(grad_w.begin(), grad_w.end(), 0.0);
            std::fill(grad_b.begin(), grad_b.end(), 0.0);
            double loss = 0.0;
            for (const Sample& s : data) {
                const std::vector<double> p = predict(s.x);
                loss -= std::log(std::max(p[s.label], 1e-300));
                for (std::size_t c = 0; c < num_classes_; ++c) {
                    const double g = p[c] - (c == s.label ? 1.0 : 0.0);
                    grad_b[c] += g;
                    for (std::size_t j = 0; j < dim_; ++j) grad_w[c * dim_ + j] += g * s.x[j];
                }
            }
            loss *= inv_n;
            VARUNC_REQUIRE(std::isfinite(loss), ErrorCode::Divergence,
                           "training loss is not finite; reduce the learning rate (" + format_double(learning_rate) + ")");
            for (std::size_t i = 0; i < weights_.size(); ++i) {
                weights_[i] -= learning_rate * (grad_w[i] * inv_n + l2 * weights_[i]);
            }
            for (std::size_t c = 0; c < num_classes_; ++c) bias_[c] -= learning_rate * grad_b[c] * inv_n;
            for (double w : weights_) {
                VARUNC_REQUIRE(std::isfinite(w), ErrorCode::Divergence,
                               "weights diverged; reduce the learning rate (" + format_double(learning_rate) + ")");
            }
        }
    }

private:
    std::size_t num_classes_;
    std::size_t dim_;
    std::vector<double> weights_;
    std::vector<double> bias_;
};

struct SyntheticRun {
    std::vector<PredictionRecord> train;
    std::vector<PredictionRecord> test;
    std::vector<PredictionRecord> ood;
};

namespace detail {

inline std::vector<Sample> draw_class_samples(const SyntheticConfig& cfg, std::size_t n, Rng& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Sample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Sample s;
        s.label = i % cfg.num_classes;
        s.x.resize(cfg.dim);
        for (std::size_t j = 0; j < cfg.dim; ++j) {
            s.x[j] = cfg.class_means[s.label][j] + cfg.class_sigma[s.label] * normal(gen);
        }
        out.push_back(std::move(s));
    }
    return out;
}

inline std::size_t nearest_class(const SyntheticConfig& cfg, const std::vector<double>& x) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cfg.num_classes; ++c) {
        double d = 0.0;
        for (std::size_t j = 0; j < cfg.dim; ++j) d += (x[j] - cfg.class_means[c][j]) * (x[j] - cfg.class_means[c][j]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

inline std::string padded_id(const std::string& prefix, std::size_t i) {
    std::string digits = std::to_string(i);
    if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
    return prefix + "-" + digits;
}

inline std::vector<PredictionRecord> predict_all(const std::vector<LinearSoftmax>& members,
                                                 const std::vector<Sample>& data, const std::string& split) {
    std::vector<PredictionRecord> out;
    out.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        PredictionRecord r;
        r.id = padded_id(split, i);
        r.label = data[i].label;
        r.split = split;
        for (const LinearSoftmax& m : members) r.members.emplace_back(m.predict(data[i].x));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace detail

/// Samples the clusters, trains the bagged ensemble and returns its predictions on every split.
/// OoD records carry the label of the nearest class mean. Deterministic under cfg.seed.
inline SyntheticRun synth_run(const SyntheticConfig& cfg) {
    cfg.validate();
    Rng data_gen = make_rng(derive_seed(cfg.seed, 0));
    const std::vector<Sample> train = detail::draw_class_samples(cfg, cfg.n_train, data_gen);
    const std::vector<Sample> test = detail::draw_class_samples(cfg, cfg.n_test, data_gen);

    std::vector<Sample> ood;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < cfg.n_ood; ++i) {
        Sample s;
        s.x.resize(cfg.dim);
        for (std::size_t j = 0; j < cfg.dim; ++j) s.x[j] = cfg.ood_mean[j] + cfg.ood_sigma * normal(data_gen);
        s.label = detail::nearest_class(cfg, s.x);
        ood.push_back(std::move(s));
    }

    const auto boot_n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(cfg.bootstrap_fraction * static_cast<double>(cfg.n_train))));
    std::vector<LinearSoftmax> members;
    for (std::size_t m = 0; m < cfg.ensemble_size; ++m) {
        Rng gen = make_rng(derive_seed(cfg.seed, 1000 + m));
        std::uniform_int_distribution<std::size_t> pick(0, train.size() - 1);
        std::vector<Sample> resample;
        resample.reserve(boot_n);
        for (std::size_t i = 0; i < boot_n; ++i) resample.push_back(train[pick(gen)]);
        LinearSoftmax model(cfg.num_classes, cfg.dim);
        model.fit(resample, cfg.steps, cfg.learning_rate, cfg.l2);
        members.push_back(std::move(model));
    }

    return {detail::predict_all(members, train, "train"), detail::predict_all(members, test, "test"),
            detail::predict_all(members, ood, "ood")};
}

}  // namespace varunc::harness
