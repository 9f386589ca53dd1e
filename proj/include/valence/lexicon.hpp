/// @file lexicon.hpp
/// @brief Sentiment word lists: valence scales, loading, validation and
/// summary counts.
///
/// A Lexicon maps case-folded terms to a real valence on a declared scale.
/// Lists scored with strength (-5..+5, or 1..9 for affective norms) and lists
/// that only carry polarity (converted to -1/+1) share the same type.

#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "valence/text.hpp"

namespace valence {

class ValenceScale {
public:
    ValenceScale(double min, double neutral, double max)
        : min_(min), neutral_(neutral), max_(max)
    {
        if (!(std::isfinite(min) && std::isfinite(neutral) && std::isfinite(max)))
            throw std::invalid_argument("valence scale bounds must be finite");
        if (!(min < neutral && neutral < max))
            throw std::invalid_argument("valence scale requires min < neutral < max");
    }

    /// Parses "MIN:NEUTRAL:MAX", e.g. "-5:0:5".
    static ValenceScale parse(std::string_view bounds)
    {
        const auto parts = text::split(bounds, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("scale must be MIN:NEUTRAL:MAX, got '" + std::string(bounds) + "'");
        const auto lo = text::parse_real(parts[0]);
        const auto mid = text::parse_real(parts[1]);
        const auto hi = text::parse_real(parts[2]);
        if (!lo || !mid || !hi)
            throw std::invalid_argument("non-numeric scale bound in '" + std::string(bounds) + "'");
        return ValenceScale(*lo, *mid, *hi);
    }

    double min() const noexcept { return min_; }
    double neutral() const noexcept { return neutral_; }
    double max() const noexcept { return max_; }

    bool contains(double v) const noexcept { return v >= min_ && v <= max_; }

    friend bool operator==(const ValenceScale&, const ValenceScale&) = default;

private:
    double min_;
    double neutral_;
    double max_;
};

namespace scales {
inline ValenceScale strength() { return {-5.0, 0.0, 5.0}; }
inline ValenceScale affective_norms() { return {1.0, 5.0, 9.0}; }
inline ValenceScale polarity() { return {-1.0, 0.0, 1.0}; }
} // namespace scales

struct LexiconEntry {
    std::string term;
    double valence = 0.0;
    bool is_phrase = false;
};

/// Immutable term -> valence map. Terms are stored trimmed and case-folded,
/// so lookups are case-insensitive by construction.
class Lexicon {
public:
    using Map = std::map<std::string, double, std::less<>>;

    Lexicon(std::string name, ValenceScale scale, const Map& entries = {})
        : name_(std::move(name)), scale_(scale)
    {
        for (const auto& [raw, valence] : entries) {
            auto term = text::fold_case(text::trim(raw));
            if (term.empty())
                throw std::invalid_argument("lexicon '" + name_ + "': empty term");
            if (!std::isfinite(valence) || !scale_.contains(valence))
                throw std::invalid_argument("lexicon '" + name_ + "': valence of '" + term +
                                            "' outside scale");
            if (!entries_.emplace(std::move(term), valence).second)
                throw std::invalid_argument("lexicon '" + name_ + "': duplicate term '" +
                                            text::fold_case(text::trim(raw)) + "' after case folding");
        }
    }

    const std::string& name() const noexcept { return name_; }
    const ValenceScale& scale() const noexcept { return scale_; }
    const Map& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    std::optional<double> find(std::string_view term) const
    {
        const auto it = entries_.find(term);
        if (it == entries_.end())
            return std::nullopt;
        return it->second;
    }

    bool contains(std::string_view term) const { return entries_.find(term) != entries_.end(); }

    std::vector<LexiconEntry> entry_list() const
    {
        std::vector<LexiconEntry> out;
        out.reserve(entries_.size());
        for (const auto& [term, valence] : entries_)
            out.push_back({term, valence, text::has_internal_space(term)});
        return out;
    }

    /// Same entries under a different name.
    Lexicon renamed(std::string name) const
    {
        Lexicon copy = *this;
        copy.name_ = std::move(name);
        return copy;
    }

private:
    std::string name_;
    ValenceScale scale_;
    Map entries_;
};

/// Reads `term<TAB>valence` lines. Blank lines and lines starting with '#'
/// are skipped. Duplicates (after case folding) are rejected with the line
/// number of the second occurrence.
inline Lexicon load_valence_list(std::istream& in, const ValenceScale& scale, std::string name,
                                 const std::string& source = "<stream>")
{
    Lexicon::Map entries;
    std::map<std::string, std::size_t, std::less<>> first_seen;
    std::string line;
    std::size_t line_no = 0;
    while (text::read_line(in, line)) {
        ++line_no;
        if (text::trim(line).empty() || line.front() == '#')
            continue;
        const auto fields = text::split(line, '\t');
        if (fields.size() != 2)
            throw ParseError(source, line_no, "expected 'term<TAB>valence'");
        auto term = text::fold_case(text::trim(fields[0]));
        if (term.empty())
            throw ParseError(source, line_no, "empty term");
        const auto valence = text::parse_real(fields[1]);
        if (!valence)
            throw ParseError(source, line_no, "non-numeric valence '" + std::string(fields[1]) + "'");
        if (!scale.contains(*valence))
            throw ParseError(source, line_no,
                             "valence " + text::format_valence(*valence) + " of '" + term +
                                 "' outside scale [" + text::format_valence(scale.min()) + ", " +
                                 text::format_valence(scale.max()) + "]");
        if (const auto it = first_seen.find(term); it != first_seen.end())
            throw ParseError(source, line_no,
                             "duplicate term '" + term + "' (first on line " + std::to_string(it->second) + ")");
        first_seen.emplace(term, line_no);
        entries.emplace(std::move(term), *valence);
    }
    return Lexicon(std::move(name), scale, entries);
}

inline Lexicon load_valence_file(const std::string& path, const ValenceScale& scale, std::string name)
{
    auto in = text::open_input(path);
    return load_valence_list(in, scale, std::move(name), path);
}

/// Writes the lexicon in the same `term<TAB>valence` format, sorted by term.
inline void write_valence_list(std::ostream& out, const Lexicon& lex)
{
    for (const auto& [term, valence] : lex.entries())
        out << term << '\t' << text::format_valence(valence) << '\n';
}

/// One term per line; blank and '#' lines skipped. Terms are case-folded.
inline std::vector<std::string> load_term_list(std::istream& in)
{
    std::vector<std::string> terms;
    std::string line;
    while (text::read_line(in, line)) {
        const auto term = text::trim(line);
        if (term.empty() || term.front() == '#')
            continue;
        terms.push_back(text::fold_case(term));
    }
    return terms;
}

/// Polarity-only lists become a lexicon on the (-1, 0, +1) scale.
inline Lexicon from_polarity_list(const std::vector<std::string>& positive_terms,
                                  const std::vector<std::string>& negative_terms, std::string name)
{
    std::set<std::string, std::less<>> positive;
    for (const auto& t : positive_terms)
        positive.insert(text::fold_case(text::trim(t)));
    Lexicon::Map entries;
    for (const auto& t : positive)
        entries.emplace(t, 1.0);
    for (const auto& raw : negative_terms) {
        auto t = text::fold_case(text::trim(raw));
        if (positive.contains(t))
            throw std::invalid_argument("term '" + t + "' is in both the positive and negative list");
        entries.emplace(std::move(t), -1.0);
    }
    return Lexicon(std::move(name), scales::polarity(), entries);
}

/// Drops multiword entries.
inline Lexicon strip_phrases(const Lexicon& lex)
{
    Lexicon::Map kept;
    for (const auto& [term, valence] : lex.entries())
        if (!text::has_internal_space(term))
            kept.emplace(term, valence);
    return Lexicon(lex.name(), lex.scale(), kept);
}

/// Counts per bin [k*w, (k+1)*w), keyed by the bin's lower edge k*w.
inline std::map<double, std::size_t> valence_histogram(const Lexicon& lex, double bin_width)
{
    if (!(bin_width > 0.0) || !std::isfinite(bin_width))
        throw std::invalid_argument("bin width must be positive");
    std::map<double, std::size_t> bins;
    for (const auto& [term, valence] : lex.entries())
        ++bins[std::floor(valence / bin_width) * bin_width + 0.0];
    return bins;
}

struct PolarityCounts {
    std::size_t negative = 0;
    std::size_t positive = 0;
    std::size_t neutral = 0;

    std::size_t total() const noexcept { return negative + positive + neutral; }
    friend bool operator==(const PolarityCounts&, const PolarityCounts&) = default;
};

inline PolarityCounts polarity_counts(const Lexicon& lex)
{
    PolarityCounts counts;
    const double neutral = lex.scale().neutral();
    for (const auto& [term, valence] : lex.entries()) {
        if (valence < neutral)
            ++counts.negative;
        else if (valence > neutral)
            ++counts.positive;
        else
            ++counts.neutral;
    }
    return counts;
}

} // namespace valence
