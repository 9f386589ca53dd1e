/// @file scorer.hpp
/// @brief Text-level sentiment strength from per-token valences.
///
/// Every scheme works on deviations d_i = valence_i - neutral, with unmatched
/// tokens contributing d_i = 0, so lists on a 1..9 scale aggregate the same
/// way as lists on -5..+5.
///
///   mean          neutral + sum(d) / token_count
///   sum           neutral + sum(d)
///   mean-matched  neutral + sum(d) / matched_count
///   extreme       neutral + the d_i of largest magnitude (opposite-sign tie -> neutral)
///   quantized     sign(sum(d)) in {-1, 0, +1}
///
/// Empty texts, and texts without matches for mean-matched, score neutral
/// (quantized: 0).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "valence/matcher.hpp"
#include "valence/tokenizer.hpp"

namespace valence {

enum class ScoringScheme { mean_all_tokens, sum_raw, mean_matched, extreme, quantized };

inline constexpr std::array<ScoringScheme, 5> all_schemes{
    ScoringScheme::mean_all_tokens, ScoringScheme::sum_raw, ScoringScheme::mean_matched,
    ScoringScheme::extreme, ScoringScheme::quantized};

inline std::string_view to_string(ScoringScheme s)
{
    switch (s) {
    case ScoringScheme::mean_all_tokens:
        return "mean";
    case ScoringScheme::sum_raw:
        return "sum";
    case ScoringScheme::mean_matched:
        return "mean-matched";
    case ScoringScheme::extreme:
        return "extreme";
    case ScoringScheme::quantized:
        return "quantized";
    }
    return "?";
}

inline ScoringScheme parse_scoring_scheme(std::string_view s)
{
    for (auto scheme : all_schemes)
        if (to_string(scheme) == s)
            return scheme;
    throw std::invalid_argument("unknown scoring scheme '" + std::string(s) +
                                "' (expected mean|sum|mean-matched|extreme|quantized)");
}

struct TextScore {
    double value = 0.0;
    std::size_t token_count = 0;
    std::size_t matched_count = 0; ///< tokens with a hit whose valence is not neutral
};

/// Aggregates the deviations of one text. Only non-zero deviations need to be
/// passed; token_count covers all tokens.
inline TextScore aggregate_deviations(std::vector<double> deviations, std::size_t token_count,
                                      ScoringScheme scheme, double neutral)
{
    TextScore score;
    score.token_count = token_count;
    score.matched_count = deviations.size();

    // Sorting first makes the sum independent of token order.
    std::sort(deviations.begin(), deviations.end());
    double sum = 0.0;
    for (double d : deviations)
        sum += d;

    switch (scheme) {
    case ScoringScheme::mean_all_tokens:
        score.value = token_count == 0 ? neutral : neutral + sum / static_cast<double>(token_count);
        break;
    case ScoringScheme::sum_raw:
        score.value = neutral + sum;
        break;
    case ScoringScheme::mean_matched:
        score.value = deviations.empty() ? neutral : neutral + sum / static_cast<double>(deviations.size());
        break;
    case ScoringScheme::extreme: {
        double most = 0.0;
        bool tie = false;
        for (double d : deviations) {
            if (std::abs(d) > std::abs(most)) {
                most = d;
                tie = false;
            } else if (std::abs(d) == std::abs(most) && d != most) {
                tie = true;
            }
        }
        score.value = tie ? neutral : neutral + most;
        break;
    }
    case ScoringScheme::quantized:
        score.value = sum > 0.0 ? 1.0 : (sum < 0.0 ? -1.0 : 0.0);
        break;
    }
    return score;
}

/// Scores a text given its tokens' index keys (see LookupIndex::key_for).
inline TextScore score_keys(std::span<const std::string> keys, const LookupIndex& index, ScoringScheme scheme)
{
    const double neutral = index.scale().neutral();
    std::vector<double> deviations;
    for (const auto& key : keys) {
        if (const auto v = index.find_key(key); v && *v != neutral)
            deviations.push_back(*v - neutral);
    }
    return aggregate_deviations(std::move(deviations), keys.size(), scheme, neutral);
}

/// Scores a token sequence; the neutral point is the index's scale neutral.
inline TextScore score_text(std::span<const Token> tokens, const LookupIndex& index, ScoringScheme scheme)
{
    std::vector<std::string> keys;
    keys.reserve(tokens.size());
    for (const auto& t : tokens)
        keys.push_back(index.key_for(t.text));
    return score_keys(keys, index, scheme);
}

inline TextScore score_text(std::string_view raw, const LookupIndex& index, ScoringScheme scheme)
{
    const auto tokens = tokenize(raw);
    return score_text(std::span<const Token>(tokens), index, scheme);
}

} // namespace valence
