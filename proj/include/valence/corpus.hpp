/// @file corpus.hpp
/// @brief Gold-labelled corpora and externally produced score columns.
///
/// Corpus format (UTF-8, LF): `id<TAB>text<TAB>r1,r2,...` with integer ratings
/// in [1, 9]. Inside the text field a backslash escapes `\t`, `\n`, `\r` and
/// `\\`. Score columns are `id<TAB>value`; dual-strength columns are
/// `id<TAB>positive<TAB>negative` and are collapsed to one value per row.

#pragma once

#include <cstddef>
#include <cstdlib>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "valence/text.hpp"

namespace valence {

inline constexpr int min_rating = 1;
inline constexpr int max_rating = 9;

struct LabeledText {
    std::string id;
    std::string text;
    std::vector<int> ratings;
};

/// Mean of the ratings.
inline double gold_score(const LabeledText& t)
{
    if (t.ratings.empty())
        throw std::invalid_argument("text '" + t.id + "' has no ratings");
    const double sum = std::accumulate(t.ratings.begin(), t.ratings.end(), 0.0);
    return sum / static_cast<double>(t.ratings.size());
}

/// Positive strength 1..5 and negative strength -5..-1 reported side by side.
class DualStrength {
public:
    DualStrength(int positive, int negative) : positive_(positive), negative_(negative)
    {
        if (positive < 1 || positive > 5)
            throw std::out_of_range("positive strength " + std::to_string(positive) + " outside [1, 5]");
        if (negative < -5 || negative > -1)
            throw std::out_of_range("negative strength " + std::to_string(negative) + " outside [-5, -1]");
    }

    int positive() const noexcept { return positive_; }
    int negative() const noexcept { return negative_; }

private:
    int positive_;
    int negative_;
};

/// The side with the larger magnitude wins; equal magnitudes give 0.
inline int collapse_dual(const DualStrength& d)
{
    const int neg_magnitude = -d.negative();
    if (d.positive() > neg_magnitude)
        return d.positive();
    if (neg_magnitude > d.positive())
        return d.negative();
    return 0;
}

struct ScoreColumn {
    std::string name;
    std::vector<double> values; ///< aligned to corpus order
};

namespace detail {

inline std::string unescape_field(std::string_view s, const std::string& source, std::size_t line_no)
{
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (++i == s.size())
            throw ParseError(source, line_no, "dangling backslash in text field");
        switch (s[i]) {
        case 't':
            out += '\t';
            break;
        case 'n':
            out += '\n';
            break;
        case 'r':
            out += '\r';
            break;
        case '\\':
            out += '\\';
            break;
        default:
            throw ParseError(source, line_no, std::string("unknown escape '\\") + s[i] + "'");
        }
    }
    return out;
}

inline std::string escape_field(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '\t':
            out += "\\t";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\r':
            out += "\\r";
            break;
        case '\\':
            out += "\\\\";
            break;
        default:
            out += c;
        }
    }
    return out;
}

inline std::map<std::string, std::size_t, std::less<>> id_positions(const std::vector<LabeledText>& corpus)
{
    std::map<std::string, std::size_t, std::less<>> pos;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        pos.emplace(corpus[i].id, i);
    return pos;
}

} // namespace detail

inline std::vector<LabeledText> load_corpus(std::istream& in, const std::string& source = "<stream>")
{
    std::vector<LabeledText> corpus;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (text::read_line(in, line)) {
        ++line_no;
        if (text::trim(line).empty())
            continue;
        const auto fields = text::split(line, '\t');
        if (fields.size() != 3)
            throw ParseError(source, line_no, "expected 'id<TAB>text<TAB>ratings'");
        LabeledText item;
        item.id = std::string(text::trim(fields[0]));
        if (item.id.empty())
            throw ParseError(source, line_no, "empty id");
        if (const auto it = seen.find(item.id); it != seen.end())
            throw ParseError(source, line_no,
                             "duplicate id '" + item.id + "' (first on line " + std::to_string(it->second) + ")");
        item.text = detail::unescape_field(fields[1], source, line_no);
        if (text::trim(fields[2]).empty())
            throw ParseError(source, line_no, "no ratings for id '" + item.id + "'");
        for (auto r : text::split(fields[2], ',')) {
            const auto v = text::parse_int(r);
            if (!v)
                throw ParseError(source, line_no, "non-integer rating '" + std::string(r) + "'");
            if (*v < min_rating || *v > max_rating)
                throw ParseError(source, line_no, "rating " + std::to_string(*v) + " outside [1, 9]");
            item.ratings.push_back(static_cast<int>(*v));
        }
        seen.emplace(item.id, line_no);
        corpus.push_back(std::move(item));
    }
    return corpus;
}

inline std::vector<LabeledText> load_corpus_file(const std::string& path)
{
    auto in = text::open_input(path);
    return load_corpus(in, path);
}

/// Canonical form: one record per line, ratings comma-joined without spaces.
inline void write_corpus(std::ostream& out, const std::vector<LabeledText>& corpus)
{
    for (const auto& t : corpus) {
        out << t.id << '\t' << detail::escape_field(t.text) << '\t';
        for (std::size_t i = 0; i < t.ratings.size(); ++i)
            out << (i ? "," : "") << t.ratings[i];
        out << '\n';
    }
}

/// One raw text per line; ids are 1-based line numbers, ratings left empty.
inline std::vector<LabeledText> load_raw_texts(std::istream& in)
{
    std::vector<LabeledText> texts;
    std::string line;
    std::size_t line_no = 0;
    while (text::read_line(in, line)) {
        ++line_no;
        texts.push_back({std::to_string(line_no), line, {}});
    }
    return texts;
}

inline ScoreColumn gold_column(const std::vector<LabeledText>& corpus, std::string name = "gold")
{
    ScoreColumn col{std::move(name), {}};
    col.values.reserve(corpus.size());
    for (const auto& t : corpus)
        col.values.push_back(gold_score(t));
    return col;
}

namespace detail {

/// Shared id alignment for the two external column formats.
template <typename ParseRow>
ScoreColumn load_aligned_column(std::istream& in, const std::vector<LabeledText>& corpus, std::string name,
                                const std::string& source, std::size_t fields_expected, ParseRow parse_row)
{
    const auto positions = id_positions(corpus);
    std::vector<double> values(corpus.size());
    std::vector<bool> filled(corpus.size(), false);
    std::string line;
    std::size_t line_no = 0;
    while (text::read_line(in, line)) {
        ++line_no;
        if (text::trim(line).empty() || line.front() == '#')
            continue;
        const auto fields = text::split(line, '\t');
        if (fields.size() != fields_expected)
            throw ParseError(source, line_no, "expected " + std::to_string(fields_expected) + " tab-separated fields");
        const auto id = text::trim(fields[0]);
        const auto it = positions.find(id);
        if (it == positions.end())
            throw ParseError(source, line_no, "unknown id '" + std::string(id) + "'");
        if (filled[it->second])
            throw ParseError(source, line_no, "duplicate id '" + std::string(id) + "'");
        values[it->second] = parse_row(fields, line_no);
        filled[it->second] = true;
    }
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (!filled[i])
            throw ParseError(source, line_no, "missing value for id '" + corpus[i].id + "'");
    return ScoreColumn{std::move(name), std::move(values)};
}

} // namespace detail

inline ScoreColumn load_score_column(std::istream& in, const std::vector<LabeledText>& corpus, std::string name,
                                     const std::string& source = "<stream>")
{
    return detail::load_aligned_column(
        in, corpus, std::move(name), source, 2, [&](const auto& fields, std::size_t line_no) {
            const auto v = text::parse_real(fields[1]);
            if (!v)
                throw ParseError(source, line_no, "non-numeric value '" + std::string(fields[1]) + "'");
            return *v;
        });
}

inline ScoreColumn load_dual_column(std::istream& in, const std::vector<LabeledText>& corpus, std::string name,
                                    const std::string& source = "<stream>")
{
    return detail::load_aligned_column(
        in, corpus, std::move(name), source, 3, [&](const auto& fields, std::size_t line_no) {
            const auto pos = text::parse_int(fields[1]);
            const auto neg = text::parse_int(fields[2]);
            if (!pos || !neg || *pos != static_cast<int>(*pos) || *neg != static_cast<int>(*neg))
                throw ParseError(source, line_no, "non-integer dual strength");
            try {
                return static_cast<double>(collapse_dual(DualStrength(static_cast<int>(*pos), static_cast<int>(*neg))));
            } catch (const std::out_of_range& e) {
                throw ParseError(source, line_no, e.what());
            }
        });
}

} // namespace valence
