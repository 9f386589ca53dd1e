/// @file lexicompare.hpp
/// @brief Cross-lexicon analysis: shared terms, rank agreement, sign
/// discrepancies and sub-lexicons restricted to a term set.

#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "valence/lexicon.hpp"
#include "valence/matcher.hpp"
#include "valence/stats.hpp"
#include "valence/text.hpp"

namespace valence {

struct IntersectionResult {
    std::vector<std::string> terms; ///< shared keys, sorted
    std::vector<double> valences_a;
    std::vector<double> valences_b;
    MatchStrategy strategy = MatchStrategy::exact;

    std::size_t size() const noexcept { return terms.size(); }
    bool empty() const noexcept { return terms.empty(); }
};

/// Shared keys of two phrase-free lexicons. Under stemmed matching both sides
/// are first merged per stem exactly as build_index does.
inline IntersectionResult intersect(const Lexicon& a, const Lexicon& b, MatchStrategy strategy)
{
    const auto index_a = build_index(a, strategy);
    const auto index_b = build_index(b, strategy);
    IntersectionResult r;
    r.strategy = strategy;
    auto it_a = index_a.keys().begin();
    auto it_b = index_b.keys().begin();
    while (it_a != index_a.keys().end() && it_b != index_b.keys().end()) {
        if (it_a->first < it_b->first) {
            ++it_a;
        } else if (it_b->first < it_a->first) {
            ++it_b;
        } else {
            r.terms.push_back(it_a->first);
            r.valences_a.push_back(it_a->second);
            r.valences_b.push_back(it_b->second);
            ++it_a;
            ++it_b;
        }
    }
    return r;
}

/// Spearman correlation of the paired valences; needs two or more terms.
inline Correlation intersection_rank_correlation(const IntersectionResult& r)
{
    return spearman(r.valences_a, r.valences_b);
}

inline bool opposite_signs(double a, double b)
{
    return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
}

/// Terms whose valences fall on strictly opposite sides of the two neutral
/// points. A valence exactly at neutral is never a discrepancy.
inline std::vector<std::string> sign_discrepancies(const IntersectionResult& r, double neutral_a, double neutral_b)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        if (opposite_signs(r.valences_a[i] - neutral_a, r.valences_b[i] - neutral_b))
            out.push_back(r.terms[i]);
    }
    return out;
}

/// Source restricted to the given terms, keeping its name and scale.
inline Lexicon sublexicon(const std::vector<std::string>& terms, const Lexicon& source)
{
    Lexicon::Map kept;
    for (const auto& term : terms) {
        const auto v = source.find(term);
        if (!v)
            throw std::invalid_argument("term '" + term + "' not in lexicon '" + source.name() + "'");
        kept.emplace(term, *v);
    }
    return Lexicon(source.name(), source.scale(), kept);
}

/// term,valence_a,valence_b rows for every shared term.
inline void write_intersection_csv(std::ostream& out, const IntersectionResult& r, const std::string& name_a,
                                   const std::string& name_b)
{
    out << "term," << text::csv_field(name_a) << ',' << text::csv_field(name_b) << '\n';
    for (std::size_t i = 0; i < r.terms.size(); ++i)
        out << text::csv_field(r.terms[i]) << ',' << text::format_valence(r.valences_a[i]) << ','
            << text::format_valence(r.valences_b[i]) << '\n';
}

/// Same layout, restricted to the sign discrepancies.
inline void write_discrepancy_csv(std::ostream& out, const IntersectionResult& r, double neutral_a,
                                  double neutral_b, const std::string& name_a, const std::string& name_b)
{
    out << "term," << text::csv_field(name_a) << ',' << text::csv_field(name_b) << '\n';
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        if (opposite_signs(r.valences_a[i] - neutral_a, r.valences_b[i] - neutral_b))
            out << text::csv_field(r.terms[i]) << ',' << text::format_valence(r.valences_a[i]) << ','
                << text::format_valence(r.valences_b[i]) << '\n';
    }
}

} // namespace valence
