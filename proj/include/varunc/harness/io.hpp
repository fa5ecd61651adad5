#pragma once

// Prediction files.
//
// CSV:   header `id,label,member,p0,...,p{K-1}`, one row per (instance, member).
//        K is inferred from the header. Rows of one instance share id and label;
//        members are ordered by their `member` index. Ids must not contain commas.
// JSONL: one object per instance, {"id": str, "label": int, "members": [[K floats] x M]},
//        optionally with "split": str. Objects of the form {"meta": {...}} carry run
//        metadata and are not records.
//
// Probability rows within 1e-6 of summing to one are renormalized.

#include "varunc/error.hpp"
#include "varunc/format.hpp"
#include "varunc/harness/records.hpp"
#include "varunc/simplex.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace varunc::harness {

inline constexpr double kFileSimplexTolerance = 1e-6;

enum class FileFormat { Csv, Jsonl };

struct PredictionSet {
    std::vector<PredictionRecord> records;
    /// Contents of a JSONL meta line, when present.
    nlohmann::json meta;
};

namespace detail {

[[noreturn]] inline void schema_error(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::Schema, "line " + std::to_string(line) + ": " + what);
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(',', start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_real(std::string_view s, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        schema_error(line, "'" + std::string(s) + "' is not a finite number");
    }
    return v;
}

inline long long parse_integer(std::string_view s, std::size_t line) {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        schema_error(line, "'" + std::string(s) + "' is not an integer");
    }
    return v;
}

inline Categorical make_row(std::vector<double> probs, std::size_t line) {
    try {
        return Categorical(std::move(probs), kFileSimplexTolerance);
    } catch (const Error& e) {
        schema_error(line, std::string("probability row off the simplex (") + e.what() + ")");
    }
}

inline std::size_t checked_label(long long label, std::size_t num_labels, std::size_t line) {
    if (label < 0 || static_cast<std::size_t>(label) >= num_labels) {
        schema_error(line, "label " + std::to_string(label) + " outside [0, " + std::to_string(num_labels) + ")");
    }
    return static_cast<std::size_t>(label);
}

}  // namespace detail

inline PredictionSet read_csv(std::istream& in) {
    std::string text;
    std::size_t line_no = 0;
    if (!std::getline(in, text)) throw Error(ErrorCode::Schema, "line 1: missing CSV header");
    ++line_no;
    const auto header = detail::split_commas(text);
    if (header.size() < 5 || header[0] != "id" || header[1] != "label" || header[2] != "member") {
        detail::schema_error(line_no, "header must be id,label,member,p0,...,p{K-1} with K >= 2");
    }
    const std::size_t num_labels = header.size() - 3;
    for (std::size_t k = 0; k < num_labels; ++k) {
        if (header[3 + k] != "p" + std::to_string(k)) {
            detail::schema_error(line_no, "expected column p" + std::to_string(k) + ", found '" +
                                              std::string(header[3 + k]) + "'");
        }
    }

    struct Pending {
        PredictionRecord record;
        std::map<long long, Categorical> members;
    };
    std::vector<Pending> pending;
    std::unordered_map<std::string, std::size_t> index;

    while (std::getline(in, text)) {
        ++line_no;
        if (detail::trim(text).empty()) continue;
        const auto cells = detail::split_commas(text);
        if (cells.size() != header.size()) {
            detail::schema_error(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                              std::to_string(cells.size()));
        }
        const std::string id(cells[0]);
        if (id.empty()) detail::schema_error(line_no, "empty id");
        const std::size_t label = detail::checked_label(detail::parse_integer(cells[1], line_no), num_labels, line_no);
        const long long member = detail::parse_integer(cells[2], line_no);
        if (member < 0) detail::schema_error(line_no, "member index must be >= 0");
        std::vector<double> probs(num_labels);
        for (std::size_t k = 0; k < num_labels; ++k) probs[k] = detail::parse_real(cells[3 + k], line_no);
        Categorical row = detail::make_row(std::move(probs), line_no);

        auto [it, inserted] = index.try_emplace(id, pending.size());
        if (inserted) {
            pending.push_back({});
            pending.back().record.id = id;
            pending.back().record.label = label;
        }
        Pending& p = pending[it->second];
        if (p.record.label != label) detail::schema_error(line_no, "instance '" + id + "' changes its label");
        if (!p.members.emplace(member, std::move(row)).second) {
            detail::schema_error(line_no, "duplicate member " + std::to_string(member) + " for instance '" + id + "'");
        }
    }

    PredictionSet out;
    out.records.reserve(pending.size());
    for (Pending& p : pending) {
        for (auto& [m, row] : p.members) p.record.members.push_back(std::move(row));
        out.records.push_back(std::move(p.record));
    }
    return out;
}

inline PredictionSet read_jsonl(std::istream& in) {
    PredictionSet out;
    std::unordered_set<std::string> seen;
    std::string text;
    std::size_t line_no = 0;
    std::optional<std::size_t> num_labels;
    while (std::getline(in, text)) {
        ++line_no;
        if (detail::trim(text).empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            detail::schema_error(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object()) detail::schema_error(line_no, "expected a JSON object");
        if (obj.contains("meta")) {
            out.meta = obj["meta"];
            continue;
        }
        if (!obj.contains("id") || !obj["id"].is_string()) detail::schema_error(line_no, "missing string field 'id'");
        if (!obj.contains("label") || !obj["label"].is_number_integer()) {
            detail::schema_error(line_no, "missing integer field 'label'");
        }
        if (!obj.contains("members") || !obj["members"].is_array() || obj["members"].empty()) {
            detail::schema_error(line_no, "missing nonempty array field 'members'");
        }
        PredictionRecord rec;
        rec.id = obj["id"].get<std::string>();
        if (!seen.insert(rec.id).second) detail::schema_error(line_no, "duplicate id '" + rec.id + "'");
        if (obj.contains("split")) {
            if (!obj["split"].is_string()) detail::schema_error(line_no, "'split' must be a string");
            rec.split = obj["split"].get<std::string>();
        }
        for (const auto& row : obj["members"]) {
            if (!row.is_array() || row.size() < 2) detail::schema_error(line_no, "each member must be an array of K >= 2 numbers");
            std::vector<double> probs;
            for (const auto& v : row) {
                if (!v.is_number()) detail::schema_error(line_no, "member entries must be numbers");
                probs.push_back(v.get<double>());
            }
            if (!num_labels) num_labels = probs.size();
            if (probs.size() != *num_labels) {
                detail::schema_error(line_no, "member has " + std::to_string(probs.size()) + " probabilities, expected " +
                                                  std::to_string(*num_labels));
            }
            rec.members.push_back(detail::make_row(std::move(probs), line_no));
        }
        rec.label = detail::checked_label(obj["label"].get<long long>(), *num_labels, line_no);
        out.records.push_back(std::move(rec));
    }
    return out;
}

inline FileFormat format_from_path(const std::string& path) {
    auto ends_with = [&](std::string_view suffix) {
        return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with(".csv")) return FileFormat::Csv;
    if (ends_with(".jsonl") || ends_with(".json") || path == "-") return FileFormat::Jsonl;
    throw Error(ErrorCode::Validation, "cannot infer format of '" + path + "'; use a .csv or .jsonl extension");
}

inline FileFormat parse_format(std::string_view name) {
    if (name == "csv") return FileFormat::Csv;
    if (name == "jsonl") return FileFormat::Jsonl;
    throw Error(ErrorCode::UnknownId, "unknown format '" + std::string(name) + "' (expected csv or jsonl)");
}

/// Reads a prediction file; "-" reads standard input.
inline PredictionSet load_predictions(const std::string& path, std::optional<FileFormat> format = std::nullopt) {
    const FileFormat fmt = format ? *format : format_from_path(path);
    if (path == "-") return fmt == FileFormat::Csv ? read_csv(std::cin) : read_jsonl(std::cin);
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    return fmt == FileFormat::Csv ? read_csv(in) : read_jsonl(in);
}

inline void write_csv(std::ostream& out, const std::vector<PredictionRecord>& records) {
    if (records.empty()) return;
    const std::size_t num_labels = records.front().num_labels();
    out << "id,label,member";
    for (std::size_t k = 0; k < num_labels; ++k) out << ",p" << k;
    out << '\n';
    for (const PredictionRecord& r : records) {
        for (std::size_t m = 0; m < r.members.size(); ++m) {
            out << r.id << ',' << r.label << ',' << m;
            for (double p : r.members[m]) out << ',' << format_double(p);
            out << '\n';
        }
    }
}

inline void write_jsonl(std::ostream& out, const std::vector<PredictionRecord>& records,
                        const nlohmann::json& meta = nullptr) {
    if (!meta.is_null()) out << nlohmann::json{{"meta", meta}}.dump() << '\n';
    for (const PredictionRecord& r : records) {
        // Written by hand so floats use the shortest round-trip form.
        out << "{\"id\":" << nlohmann::json(r.id).dump() << ",\"label\":" << r.label << ",\"members\":[";
        for (std::size_t m = 0; m < r.members.size(); ++m) {
            out << (m ? ",[" : "[");
            for (std::size_t k = 0; k < r.members[m].size(); ++k) out << (k ? "," : "") << format_double(r.members[m][k]);
            out << ']';
        }
        out << ']';
        if (!r.split.empty()) out << ",\"split\":" << nlohmann::json(r.split).dump();
        out << "}\n";
    }
}

}  // namespace varunc::harness
