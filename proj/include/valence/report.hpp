/// @file report.hpp
/// @brief CSV and JSON renderings of evaluation results.
///
/// Undefined correlations are written as `NA` in CSV and `null` in JSON.
/// Numbers use the shortest round-trip decimal form, so the same results
/// always produce the same bytes.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "valence/experiments.hpp"
#include "valence/lexicompare.hpp"
#include "valence/text.hpp"

namespace valence::report {

using Json = nlohmann::ordered_json;

inline std::string csv_cell(const Correlation& c)
{
    return c ? text::format_real(*c) : "NA";
}

inline Json json_value(const Correlation& c)
{
    return c ? Json(*c) : Json(nullptr);
}

inline void write_matrix_csv(std::ostream& out, const std::vector<std::string>& names,
                             const std::vector<std::vector<Correlation>>& m)
{
    out << "column";
    for (const auto& n : names)
        out << ',' << text::csv_field(n);
    out << '\n';
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << text::csv_field(names[i]);
        for (std::size_t j = 0; j < names.size(); ++j)
            out << ',' << csv_cell(m[i][j]);
        out << '\n';
    }
}

/// Three decimals without the leading zero (".564", "-.071"); NA if undefined.
inline std::string short_cell(const Correlation& c)
{
    if (!c)
        return "NA";
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.3f", *c);
    std::string s = buf;
    if (s == "-0.000")
        s = "0.000";
    if (s.starts_with("0."))
        s.erase(0, 1);
    else if (s.starts_with("-0."))
        s.erase(1, 1);
    return s;
}

/// Upper triangle of a correlation matrix as an aligned text table: rows are
/// every column but the last, headers every column but the first.
inline void write_triangle_table(std::ostream& out, const std::vector<std::string>& names,
                                 const std::vector<std::vector<Correlation>>& m)
{
    const std::size_t n = names.size();
    if (n < 2)
        return;
    std::size_t width = 6;
    for (const auto& name : names)
        width = std::max(width, name.size() + 2);
    auto pad = [&](const std::string& s) { return std::string(width - std::min(width, s.size()), ' ') + s; };
    out << std::string(width, ' ');
    for (std::size_t j = 1; j < n; ++j)
        out << pad(names[j]);
    out << '\n';
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::string row = names[i] + std::string(width - std::min(width, names[i].size()), ' ');
        for (std::size_t j = 1; j < n; ++j)
            row += j > i ? pad(short_cell(m[i][j])) : std::string(width, ' ');
        while (!row.empty() && row.back() == ' ')
            row.pop_back();
        out << row << '\n';
    }
}

inline Json matrix_json(const std::vector<std::vector<Correlation>>& m)
{
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& c : row)
            r.push_back(json_value(c));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Json to_json(const CorrelationReport& r)
{
    return Json{{"columns", r.column_names}, {"pearson", matrix_json(r.pearson)}, {"spearman", matrix_json(r.spearman)}};
}

inline Json to_json(const CoverageReport& c)
{
    return Json{{"total_tokens", c.total_tokens},
                {"unique_tokens", c.unique_tokens},
                {"unique_matched", c.unique_matched},
                {"lexicon_size", c.lexicon_size}};
}

inline Json to_json(const FiveNumberSummary& s)
{
    return Json{{"defined", s.defined}, {"min", s.min},     {"q1", s.q1},
                {"median", s.median},   {"q3", s.q3},       {"max", s.max}};
}

inline Json to_json(const std::vector<SchemeResult>& rows)
{
    Json out = Json::array();
    for (const auto& r : rows)
        out.push_back(Json{{"scheme", std::string(to_string(r.scheme))},
                           {"pearson", json_value(r.pearson)},
                           {"spearman", json_value(r.spearman)}});
    return out;
}

inline void write_scheme_sweep_csv(std::ostream& out, const std::vector<SchemeResult>& rows)
{
    out << "scheme,pearson,spearman\n";
    for (const auto& r : rows)
        out << to_string(r.scheme) << ',' << csv_cell(r.pearson) << ',' << csv_cell(r.spearman) << '\n';
}

/// size,resample,pearson,spearman per cell.
inline void write_curve_csv(std::ostream& out, const std::vector<LearningCurvePoint>& points)
{
    out << "size,resample,pearson,spearman\n";
    for (const auto& p : points)
        for (std::size_t r = 0; r < p.pearson_samples.size(); ++r)
            out << p.size << ',' << r << ',' << csv_cell(p.pearson_samples[r]) << ','
                << csv_cell(p.spearman_samples[r]) << '\n';
}

/// size,statistic,defined,min,q1,median,q3,max; sizes with no defined
/// sample get a row with defined = 0 and NA cells.
inline void write_curve_summary_csv(std::ostream& out, const std::vector<LearningCurvePoint>& points)
{
    out << "size,statistic,defined,min,q1,median,q3,max\n";
    auto row = [&](std::size_t size, const char* stat, const std::vector<Correlation>& samples) {
        out << size << ',' << stat << ',';
        bool any = false;
        for (const auto& s : samples)
            any = any || s.has_value();
        if (!any) {
            out << "0,NA,NA,NA,NA,NA\n";
            return;
        }
        const auto f = summarize_samples(samples);
        out << f.defined << ',' << text::format_real(f.min) << ',' << text::format_real(f.q1) << ','
            << text::format_real(f.median) << ',' << text::format_real(f.q3) << ',' << text::format_real(f.max)
            << '\n';
    };
    for (const auto& p : points) {
        row(p.size, "pearson", p.pearson_samples);
        row(p.size, "spearman", p.spearman_samples);
    }
}

inline Json to_json(const std::vector<LearningCurvePoint>& points)
{
    Json out = Json::array();
    auto summary = [](const std::vector<Correlation>& samples) -> Json {
        for (const auto& s : samples)
            if (s)
                return to_json(summarize_samples(samples));
        return nullptr;
    };
    for (const auto& p : points) {
        Json ps = Json::array();
        Json ss = Json::array();
        for (const auto& s : p.pearson_samples)
            ps.push_back(json_value(s));
        for (const auto& s : p.spearman_samples)
            ss.push_back(json_value(s));
        out.push_back(Json{{"size", p.size},
                           {"pearson_samples", ps},
                           {"spearman_samples", ss},
                           {"pearson_summary", summary(p.pearson_samples)},
                           {"spearman_summary", summary(p.spearman_samples)}});
    }
    return out;
}

inline Json to_json(const IntersectionResult& r, const std::vector<std::string>& discrepancies)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.terms.size(); ++i)
        rows.push_back(Json{{"term", r.terms[i]}, {"a", r.valences_a[i]}, {"b", r.valences_b[i]}});
    return Json{{"strategy", std::string(to_string(r.strategy))},
                {"size", r.terms.size()},
                {"terms", rows},
                {"discrepancies", discrepancies}};
}

} // namespace valence::report
