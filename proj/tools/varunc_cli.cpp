// varunc: command-line front end.
//
//   varunc measure --in preds.csv --measures tu_var,eu_ent [--weights 1,1,2] [--outdir DIR]
//   varunc figure1 [--samples N] [--seed S] [--outdir DIR]
//   varunc axioms  [--family variance|entropy|all] [--cases N] [--seed S] [--outdir DIR]
//   varunc synth   [--seed S] [--outdir DIR]          (JSONL on stdout without --outdir)
//   varunc ood     [--in FILE|-] | --id FILE --ood FILE [--measures ...]
//   varunc arc     --in FILE [--grid 0:0.99:0.01] [--split test] [--outdir DIR]
//   varunc hist    --in FILE [--measures tu_var] [--bins 30] [--outdir DIR]
//
// Options can also come from a TOML/INI file given with --config; flags win.
// With --outdir every command writes run.json echoing the resolved options.
// Exit codes: 0 success, 1 runtime failure (or failed axiom), 2 usage/schema error.

#include "varunc/axioms.hpp"
#include "varunc/error.hpp"
#include "varunc/format.hpp"
#include "varunc/harness/evaluation.hpp"
#include "varunc/harness/figure1.hpp"
#include "varunc/harness/io.hpp"
#include "varunc/harness/svg.hpp"
#include "varunc/harness/synth.hpp"
#include "varunc/measures.hpp"
#include "varunc/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace varunc;
using namespace varunc::harness;

namespace {

struct Options {
    std::string config_note;
    std::uint64_t seed = 0;
    std::string outdir;

    // measure / ood / arc / hist
    std::string in;
    std::string format;
    std::string measures;
    std::string weights;
    std::string split;

    // ood
    std::string id_path;
    std::string ood_path;

    // arc / hist
    std::string grid = "0:0.99:0.01";
    std::size_t bins = 30;

    // figure1
    std::size_t samples = 100000;

    // axioms
    std::string family = "all";
    std::string axiom_list;
    std::size_t cases = 1000;
    std::size_t min_labels = 2;
    std::size_t max_labels = 6;
    std::size_t max_atoms = 16;

    // synth
    std::size_t n_train = 600;
    std::size_t n_test = 600;
    std::size_t n_ood = 600;
    std::size_t members = 5;
    std::size_t steps = 200;
    double learning_rate = 0.5;
    double l2 = 0.0;
    double bootstrap = 1.0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<MeasureId> parse_measures(const std::string& s) {
    std::vector<MeasureId> ids;
    for (const std::string& name : split_list(s)) ids.push_back(parse_measure(name));
    if (ids.empty()) throw UsageError("no measures given");
    return ids;
}

std::optional<WeightVector> parse_weights(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::vector<double> w;
    for (const std::string& item : split_list(s)) {
        try {
            w.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw UsageError("bad weight '" + item + "'");
        }
    }
    return WeightVector(std::move(w));
}

std::optional<FileFormat> parse_optional_format(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_format(s);
}

std::vector<PredictionRecord> filter_split(std::vector<PredictionRecord> records, const std::string& split) {
    if (split.empty()) return records;
    std::vector<PredictionRecord> out;
    for (auto& r : records) {
        if (r.split == split) out.push_back(std::move(r));
    }
    if (out.empty()) throw Error(ErrorCode::Validation, "no records with split '" + split + "'");
    return out;
}

void write_text(const std::string& outdir, const std::string& name, const std::string& content) {
    fs::create_directories(outdir);
    const fs::path path = fs::path(outdir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    out << content;
}

/// Resolved options of the invoked subcommand, in declaration order.
nlohmann::json resolved_options(const CLI::App& sub) {
    nlohmann::json opts = nlohmann::json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help") continue;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            opts[name] = res.size() == 1 ? nlohmann::json(res.front()) : nlohmann::json(res);
        } else {
            opts[name] = opt->get_default_str();
        }
    }
    return opts;
}

void write_manifest(const std::string& outdir, const CLI::App& sub, const std::string& config_file) {
    if (outdir.empty()) return;
    nlohmann::json m;
    m["tool"] = "varunc";
    m["version"] = kVersion;
    m["command"] = sub.get_name();
    m["config_file"] = config_file;
    m["options"] = resolved_options(sub);
    write_text(outdir, "run.json", m.dump(2) + "\n");
}

// ---------------------------------------------------------------- measure

int run_measure(const Options& o) {
    const std::vector<MeasureId> ids = parse_measures(o.measures);
    const std::optional<WeightVector> w = parse_weights(o.weights);
    const PredictionSet set = load_predictions(o.in, parse_optional_format(o.format));
    const auto records = filter_split(set.records, o.split);
    const ScoreTable table = score(records, ids, w);

    std::ostringstream scores;
    scores << "id,label,predicted,correct";
    for (MeasureId id : ids) scores << ',' << to_string(id);
    scores << '\n';
    for (std::size_t i = 0; i < records.size(); ++i) {
        scores << records[i].id << ',' << records[i].label << ',' << records[i].predicted() << ','
               << (records[i].correct() ? 1 : 0);
        for (std::size_t m = 0; m < ids.size(); ++m) scores << ',' << format_double(table.scores[m][i]);
        scores << '\n';
    }

    if (o.outdir.empty()) {
        std::cout << scores.str();
        return 0;
    }
    std::ostringstream lw;
    lw << "id,label_index,tu_k,au_k,eu_k\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (std::size_t k = 0; k < table.labelwise[i].size(); ++k) {
            const LabelTriple& t = table.labelwise[i][k];
            lw << records[i].id << ',' << k << ',' << format_double(t.tu) << ',' << format_double(t.au) << ','
               << format_double(t.eu) << '\n';
        }
    }
    write_text(o.outdir, "scores.csv", scores.str());
    write_text(o.outdir, "labelwise.csv", lw.str());
    std::cout << "wrote " << records.size() << " scored records to " << o.outdir << "\n";
    return 0;
}

// ---------------------------------------------------------------- figure1

int run_figure1(const Options& o) {
    const auto panels = figure1_panels(o.samples, o.seed);
    std::ostringstream csv;
    csv << "panel,distribution,measure,mean,std_error\n";
    std::cout << "seed=" << o.seed << " samples=" << o.samples << " streams=" << oracles::kDefaultStreams
              << " (variance measures normalized to [0,1])\n";
    std::cout << "panel distribution        family     TU                  AU                  EU\n";
    for (const BernoulliPanel& p : panels) {
        const std::string dist = oracles::describe(p.spec);
        for (Family fam : {Family::Entropy, Family::Variance}) {
            std::cout << "(" << p.key << ")   " << dist << std::string(dist.size() < 18 ? 18 - dist.size() : 1, ' ')
                      << to_string(fam) << (fam == Family::Entropy ? "    " : "   ");
            const MeasureId base = fam == Family::Entropy ? MeasureId::TuEnt : MeasureId::TuVar;
            for (int j = 0; j < 3; ++j) {
                const auto& e = p.at(static_cast<MeasureId>(static_cast<int>(base) + j));
                std::cout << format_fixed(e.mean, 4) << " +- " << format_fixed(e.std_error, 4) << "   ";
            }
            std::cout << "\n";
        }
        for (MeasureId id : kAllMeasures) {
            csv << p.key << ',' << dist << ',' << to_string(id) << ',' << format_double(p.at(id).mean) << ','
                << format_double(p.at(id).std_error) << '\n';
        }
    }
    if (!o.outdir.empty()) {
        write_text(o.outdir, "figure1.csv", csv.str());
        for (const BernoulliPanel& p : panels) {
            std::vector<svg::Bar> bars;
            for (MeasureId id : kAllMeasures) bars.push_back({std::string(to_string(id)), p.at(id).mean});
            write_text(o.outdir, std::string("panel_") + p.key + ".svg",
                       svg::bar_chart("(" + std::string(1, p.key) + ") " + oracles::describe(p.spec), bars, 1.0));
        }
    }
    return 0;
}

// ---------------------------------------------------------------- axioms

int run_axioms(const Options& o) {
    std::vector<Family> families;
    if (o.family == "all") {
        families = {Family::Variance, Family::Entropy};
    } else {
        families = {parse_family(o.family)};
    }
    std::vector<axioms::AxiomId> ids;
    if (o.axiom_list.empty()) {
        ids.assign(axioms::kAllAxioms.begin(), axioms::kAllAxioms.end());
    } else {
        for (const std::string& a : split_list(o.axiom_list)) ids.push_back(axioms::parse_axiom(a));
    }
    axioms::GeneratorConfig cfg;
    cfg.cases = o.cases;
    cfg.seed = o.seed;
    cfg.min_labels = o.min_labels;
    cfg.max_labels = o.max_labels;
    cfg.max_atoms = o.max_atoms;

    std::ostringstream report;
    bool ok = true;
    for (Family fam : families) {
        for (axioms::AxiomId id : ids) {
            const axioms::AxiomReport r = axioms::check_axiom(id, fam, cfg);
            ok &= r.passed();
            report << axioms::to_record(r) << '\n';
        }
        if (fam == Family::Entropy) {
            const axioms::AxiomReport r = axioms::check_proposition_mps_entropy(cfg);
            ok &= r.passed();
            report << axioms::to_record(r) << '\n';
        }
    }
    for (Family fam : families) {
        for (std::size_t k : {2u, 3u}) {
            const auto p = axioms::probe_maximality(fam, k, 100000, o.seed);
            report << "probe=A2 family=" << to_string(fam) << " K=" << k << " tu_uniform=" << format_double(p.uniform.tu)
                   << " eu_uniform=" << format_double(p.uniform.eu) << " tu_vertex_mixture="
                   << format_double(p.vertex_mixture.tu) << " eu_vertex_mixture=" << format_double(p.vertex_mixture.eu)
                   << " status=INFO\n";
        }
    }
    std::cout << report.str();
    if (!o.outdir.empty()) write_text(o.outdir, "axioms.txt", report.str());
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- synth

SyntheticConfig synth_config(const Options& o) {
    SyntheticConfig cfg = SyntheticConfig::defaults(o.seed);
    cfg.n_train = o.n_train;
    cfg.n_test = o.n_test;
    cfg.n_ood = o.n_ood;
    cfg.ensemble_size = o.members;
    cfg.steps = o.steps;
    cfg.learning_rate = o.learning_rate;
    cfg.l2 = o.l2;
    cfg.bootstrap_fraction = o.bootstrap;
    return cfg;
}

int run_synth(const Options& o) {
    const SyntheticConfig cfg = synth_config(o);
    const SyntheticRun run = synth_run(cfg);
    nlohmann::json meta = {{"generator", "synth"}, {"seed", o.seed}, {"config", cfg.to_json()}};
    const bool csv = o.format == "csv";
    if (!csv && !o.format.empty() && o.format != "jsonl") throw UsageError("--format must be csv or jsonl");
    if (o.outdir.empty()) {
        if (csv) throw UsageError("CSV output needs --outdir (one file per split)");
        std::vector<PredictionRecord> all;
        all.insert(all.end(), run.train.begin(), run.train.end());
        all.insert(all.end(), run.test.begin(), run.test.end());
        all.insert(all.end(), run.ood.begin(), run.ood.end());
        write_jsonl(std::cout, all, meta);
        return 0;
    }
    const std::pair<const char*, const std::vector<PredictionRecord>*> splits[] = {
        {"train", &run.train}, {"test", &run.test}, {"ood", &run.ood}};
    for (const auto& [name, records] : splits) {
        std::ostringstream out;
        if (csv) {
            write_csv(out, *records);
        } else {
            write_jsonl(out, *records, meta);
        }
        write_text(o.outdir, std::string(name) + (csv ? ".csv" : ".jsonl"), out.str());
    }
    std::cout << "seed=" << o.seed << " wrote train/test/ood predictions to " << o.outdir << "\n";
    return 0;
}

// ---------------------------------------------------------------- ood

int run_ood(const Options& o) {
    const std::vector<MeasureId> ids = parse_measures(o.measures.empty() ? "eu_var,eu_ent" : o.measures);
    const std::optional<WeightVector> w = parse_weights(o.weights);
    std::vector<PredictionRecord> id_records;
    std::vector<PredictionRecord> ood_records;
    nlohmann::json meta;
    if (!o.id_path.empty() || !o.ood_path.empty()) {
        if (o.id_path.empty() || o.ood_path.empty()) throw UsageError("--id and --ood must be given together");
        PredictionSet a = load_predictions(o.id_path, parse_optional_format(o.format));
        PredictionSet b = load_predictions(o.ood_path, parse_optional_format(o.format));
        id_records = std::move(a.records);
        ood_records = std::move(b.records);
        meta = a.meta;
    } else {
        PredictionSet set = load_predictions(o.in, parse_optional_format(o.format));
        meta = set.meta;
        id_records = filter_split(set.records, o.split.empty() ? "test" : o.split);
        ood_records = filter_split(std::move(set.records), "ood");
    }
    const ScoreTable id_scores = score(id_records, ids, w);
    const ScoreTable ood_scores = score(ood_records, ids, w);

    std::ostringstream csv;
    csv << "measure,auroc,id_min,id_median,id_max,ood_min,ood_median,ood_max\n";
    for (std::size_t m = 0; m < ids.size(); ++m) {
        const OodReport r = ood_report(ids[m], id_scores.scores[m], ood_scores.scores[m]);
        csv << to_string(r.measure) << ',' << format_double(r.auroc) << ',' << format_double(r.id.min) << ','
            << format_double(r.id.median) << ',' << format_double(r.id.max) << ',' << format_double(r.ood.min) << ','
            << format_double(r.ood.median) << ',' << format_double(r.ood.max) << '\n';
    }
    std::cout << "seed=" << (meta.contains("seed") ? meta["seed"].dump() : std::string("n/a")) << " id=" << id_records.size()
              << " ood=" << ood_records.size() << "\n";
    std::cout << csv.str();
    if (!o.outdir.empty()) write_text(o.outdir, "ood.csv", csv.str());
    return 0;
}

// ---------------------------------------------------------------- arc

int run_arc(const Options& o) {
    const std::vector<MeasureId> ids =
        parse_measures(o.measures.empty() ? "tu_ent,au_ent,eu_ent,tu_var,au_var,eu_var" : o.measures);
    const std::optional<WeightVector> w = parse_weights(o.weights);
    const PredictionSet set = load_predictions(o.in, parse_optional_format(o.format));
    const auto records = filter_split(set.records, o.split);
    const std::vector<double> grid = parse_grid(o.grid);
    const ScoreTable table = score(records, ids, w);

    std::vector<ArcCurve> curves;
    for (std::size_t m = 0; m < ids.size(); ++m) curves.push_back(arc(records, table.scores[m], grid));

    std::ostringstream csv;
    csv << "fraction,retained";
    for (MeasureId id : ids) csv << ',' << to_string(id);
    csv << '\n';
    for (std::size_t g = 0; g < grid.size(); ++g) {
        csv << format_double(grid[g]) << ',' << curves.front().points[g].retained;
        for (const ArcCurve& c : curves) {
            const auto& acc = c.points[g].accuracy;
            csv << ',' << (acc ? format_double(*acc) : std::string("NA"));
        }
        csv << '\n';
    }
    if (o.outdir.empty()) {
        std::cout << csv.str();
        return 0;
    }
    std::vector<svg::Series> series;
    for (std::size_t m = 0; m < ids.size(); ++m) {
        svg::Series s{std::string(to_string(ids[m])), {}, {}};
        for (const ArcPoint& p : curves[m].points) {
            if (!p.accuracy) continue;
            s.x.push_back(p.fraction);
            s.y.push_back(*p.accuracy);
        }
        series.push_back(std::move(s));
    }
    write_text(o.outdir, "arc.csv", csv.str());
    write_text(o.outdir, "arc.svg", svg::line_plot("Accuracy-rejection curves", series));
    std::cout << "wrote " << grid.size() << "-point curves to " << o.outdir << "\n";
    return 0;
}

// ---------------------------------------------------------------- hist

int run_hist(const Options& o) {
    const std::vector<MeasureId> ids = parse_measures(o.measures.empty() ? "tu_var" : o.measures);
    const std::optional<WeightVector> w = parse_weights(o.weights);
    const PredictionSet set = load_predictions(o.in, parse_optional_format(o.format));
    const auto records = filter_split(set.records, o.split);
    const ScoreTable table = score(records, ids, w);

    std::ostringstream csv;
    csv << "measure,bin,lo,hi,correct,incorrect\n";
    for (std::size_t m = 0; m < ids.size(); ++m) {
        const HistogramSplit h = histogram_split(records, table.scores[m], o.bins);
        std::vector<svg::Bar> bars;
        for (std::size_t b = 0; b < o.bins; ++b) {
            csv << to_string(ids[m]) << ',' << b << ',' << format_double(h.edges[b]) << ','
                << format_double(h.edges[b + 1]) << ',' << h.correct[b] << ',' << h.incorrect[b] << '\n';
        }
        if (!o.outdir.empty()) {
            for (std::size_t b = 0; b < o.bins; ++b) bars.push_back({"", static_cast<double>(h.correct[b])});
            for (std::size_t b = 0; b < o.bins; ++b) bars.push_back({"", static_cast<double>(h.incorrect[b])});
            write_text(o.outdir, "hist_" + std::string(to_string(ids[m])) + ".svg",
                       svg::bar_chart(std::string(to_string(ids[m])) + ": correct | incorrect", bars));
        }
    }
    if (o.outdir.empty()) {
        std::cout << csv.str();
    } else {
        write_text(o.outdir, "hist.csv", csv.str());
        std::cout << "wrote histograms to " << o.outdir << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance- and entropy-based uncertainty measures for second-order distributions"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "TOML/INI file with option values; command-line flags override it");
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "Random seed");
        sub->add_option("--outdir", o.outdir, "Directory for output files and run.json");
    };
    auto add_input = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--in", o.in, "Prediction file (.csv or .jsonl; - for stdin)");
        if (required) opt->required();
        sub->add_option("--format", o.format, "Input format: csv or jsonl (default: from extension)");
        sub->add_option("--split", o.split, "Only use records tagged with this split");
        sub->add_option("--weights", o.weights, "Comma-separated label weights for the variance family");
    };

    CLI::App* measure = app.add_subcommand("measure", "Score prediction records");
    add_input(measure, true);
    measure->add_option("--measures", o.measures, "Comma-separated measure ids")
        ->default_str("tu_ent,au_ent,eu_ent,tu_var,au_var,eu_var");
    add_common(measure);

    CLI::App* figure1 = app.add_subcommand("figure1", "Measures of the six Bernoulli-parameter panels");
    figure1->add_option("--samples", o.samples, "Atoms sampled per stream")->check(CLI::PositiveNumber);
    add_common(figure1);

    CLI::App* axioms_cmd = app.add_subcommand("axioms", "Run the axiom verification suite");
    axioms_cmd->add_option("--family", o.family, "variance, entropy or all")
        ->check(CLI::IsMember({"variance", "entropy", "all"}));
    axioms_cmd->add_option("--axioms", o.axiom_list, "Comma-separated subset of A0,A1,A3,A4,A5,A6,A7");
    axioms_cmd->add_option("--cases", o.cases, "Cases per axiom");
    axioms_cmd->add_option("--min-labels", o.min_labels, "Smallest K drawn");
    axioms_cmd->add_option("--max-labels", o.max_labels, "Largest K drawn");
    axioms_cmd->add_option("--max-atoms", o.max_atoms, "Largest atom count drawn");
    add_common(axioms_cmd);

    CLI::App* synth = app.add_subcommand("synth", "Train a bagged linear-softmax ensemble on synthetic clusters");
    synth->add_option("--n-train", o.n_train, "Training instances");
    synth->add_option("--n-test", o.n_test, "In-distribution test instances");
    synth->add_option("--n-ood", o.n_ood, "Out-of-distribution instances");
    synth->add_option("--members", o.members, "Ensemble size");
    synth->add_option("--steps", o.steps, "Gradient steps per member");
    synth->add_option("--lr", o.learning_rate, "Learning rate");
    synth->add_option("--l2", o.l2, "L2 penalty on weights");
    synth->add_option("--bootstrap", o.bootstrap, "Bootstrap sample size as a fraction of n-train");
    synth->add_option("--format", o.format, "Output format with --outdir: jsonl or csv");
    add_common(synth);

    CLI::App* ood = app.add_subcommand("ood", "OoD detection AUROC");
    ood->add_option("--in", o.in, "Split-tagged JSONL stream (test vs ood); - for stdin")->default_str("-");
    ood->add_option("--id", o.id_path, "In-distribution prediction file");
    ood->add_option("--ood", o.ood_path, "Out-of-distribution prediction file");
    ood->add_option("--format", o.format, "Input format: csv or jsonl");
    ood->add_option("--split", o.split, "In-distribution split tag (default test)");
    ood->add_option("--measures", o.measures, "Comma-separated measure ids")->default_str("eu_var,eu_ent");
    ood->add_option("--weights", o.weights, "Comma-separated label weights for the variance family");
    add_common(ood);

    CLI::App* arc_cmd = app.add_subcommand("arc", "Accuracy-rejection curves");
    add_input(arc_cmd, true);
    arc_cmd->add_option("--measures", o.measures, "Comma-separated measure ids")
        ->default_str("tu_ent,au_ent,eu_ent,tu_var,au_var,eu_var");
    arc_cmd->add_option("--grid", o.grid, "Rejection fractions: start:stop:step or a comma list");
    add_common(arc_cmd);

    CLI::App* hist = app.add_subcommand("hist", "Score histograms split by correctness");
    add_input(hist, true);
    hist->add_option("--measures", o.measures, "Comma-separated measure ids")->default_str("tu_var");
    hist->add_option("--bins", o.bins, "Number of equal-width bins")->check(CLI::Range(2, 100000));
    add_common(hist);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (o.in.empty()) o.in = "-";
    if (o.measures.empty() && measure->parsed()) o.measures = "tu_ent,au_ent,eu_ent,tu_var,au_var,eu_var";

    CLI::App* sub = app.get_subcommands().front();
    const std::string config_file = app.get_config_ptr() && app.get_config_ptr()->count() > 0
                                        ? app.get_config_ptr()->as<std::string>()
                                        : std::string();
    try {
        int rc = 0;
        if (sub == measure) rc = run_measure(o);
        else if (sub == figure1) rc = run_figure1(o);
        else if (sub == axioms_cmd) rc = run_axioms(o);
        else if (sub == synth) rc = run_synth(o);
        else if (sub == ood) rc = run_ood(o);
        else if (sub == arc_cmd) rc = run_arc(o);
        else if (sub == hist) rc = run_hist(o);
        write_manifest(o.outdir, *sub, config_file);
        return rc;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::Schema:
            case ErrorCode::UnknownId:
            case ErrorCode::Validation:
            case ErrorCode::DimensionMismatch: return 2;
            default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
