/// @file matcher.hpp
/// @brief Lookup indices over a lexicon under a matching strategy.
///
/// Exact matching keys entries by their term. Stemmed matching applies the
/// Porter stemmer to both lexicon terms and tokens; terms that share a stem
/// are merged into one key holding the mean of their valences, and every
/// such merge is recorded in the collision log.
///
/// Other normalizations (e.g. a lemmatizer) can be plugged in through the
/// KeyFunction overload of build_index.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "valence/lexicon.hpp"
#include "valence/porter.hpp"
#include "valence/text.hpp"

namespace valence {

enum class MatchStrategy { exact, stemmed };

inline std::string_view to_string(MatchStrategy s)
{
    return s == MatchStrategy::exact ? "exact" : "stemmed";
}

inline MatchStrategy parse_match_strategy(std::string_view s)
{
    if (s == "exact")
        return MatchStrategy::exact;
    if (s == "stemmed")
        return MatchStrategy::stemmed;
    throw std::invalid_argument("unknown match strategy '" + std::string(s) + "' (expected exact|stemmed)");
}

/// Maps a lowercase term or token to its index key.
using KeyFunction = std::function<std::string(std::string_view)>;

inline KeyFunction key_function(MatchStrategy s)
{
    if (s == MatchStrategy::stemmed)
        return [](std::string_view w) { return porter_stem(w); };
    return [](std::string_view w) { return std::string(w); };
}

struct StemCollision {
    std::string key;
    std::vector<std::string> terms; ///< merged terms, sorted
    double merged_valence = 0.0;
};

class LookupIndex {
public:
    using Map = std::map<std::string, double, std::less<>>;

    LookupIndex(std::string strategy, KeyFunction key_fn, ValenceScale scale, Map keys,
                std::vector<StemCollision> collisions)
        : strategy_(std::move(strategy)),
          key_fn_(std::move(key_fn)),
          scale_(scale),
          keys_(std::move(keys)),
          collisions_(std::move(collisions))
    {
    }

    const std::string& strategy() const noexcept { return strategy_; }
    const ValenceScale& scale() const noexcept { return scale_; }
    const Map& keys() const noexcept { return keys_; }
    const std::vector<StemCollision>& collisions() const noexcept { return collisions_; }
    std::size_t size() const noexcept { return keys_.size(); }

    std::string key_for(std::string_view token_text) const
    {
        return token_text.empty() ? std::string() : key_fn_(token_text);
    }

    /// Valence stored under an already-normalized key.
    std::optional<double> find_key(std::string_view key) const
    {
        const auto it = keys_.find(key);
        if (it == keys_.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<double> lookup(std::string_view token_text) const { return find_key(key_for(token_text)); }

    const KeyFunction& key_function() const noexcept { return key_fn_; }

private:
    std::string strategy_;
    KeyFunction key_fn_;
    ValenceScale scale_;
    Map keys_;
    std::vector<StemCollision> collisions_;
};

/// Builds an index with a custom key function. The lexicon must be free of
/// phrases (see strip_phrases).
inline LookupIndex build_index(const Lexicon& lex, std::string strategy_name, KeyFunction key_fn)
{
    std::map<std::string, std::vector<std::pair<std::string, double>>, std::less<>> groups;
    for (const auto& [term, valence] : lex.entries()) {
        if (text::has_internal_space(term))
            throw std::invalid_argument("lexicon '" + lex.name() + "' contains phrase '" + term +
                                        "'; strip phrases before indexing");
        groups[key_fn(term)].emplace_back(term, valence);
    }

    LookupIndex::Map keys;
    std::vector<StemCollision> collisions;
    for (auto& [key, members] : groups) {
        double sum = 0.0;
        for (const auto& m : members)
            sum += m.second;
        const double mean = sum / static_cast<double>(members.size());
        keys.emplace(key, mean);
        if (members.size() > 1) {
            StemCollision c{key, {}, mean};
            for (auto& m : members)
                c.terms.push_back(m.first);
            collisions.push_back(std::move(c));
        }
    }
    return LookupIndex(std::move(strategy_name), std::move(key_fn), lex.scale(), std::move(keys),
                       std::move(collisions));
}

inline LookupIndex build_index(const Lexicon& lex, MatchStrategy strategy)
{
    return build_index(lex, std::string(to_string(strategy)), key_function(strategy));
}

inline std::optional<double> lookup(const LookupIndex& index, std::string_view token_text)
{
    return index.lookup(token_text);
}

} // namespace valence
