/// @file experiments.hpp
/// @brief Evaluation harness: coverage counts, correlation matrices, scheme
/// sweeps and resampled learning curves against gold scores.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "valence/corpus.hpp"
#include "valence/lexicompare.hpp"
#include "valence/lexicon.hpp"
#include "valence/matcher.hpp"
#include "valence/scorer.hpp"
#include "valence/stats.hpp"
#include "valence/tokenizer.hpp"

namespace valence {

/// Token texts of every corpus item, tokenized once.
struct TokenizedCorpus {
    std::vector<std::vector<std::string>> texts;

    explicit TokenizedCorpus(const std::vector<LabeledText>& corpus)
    {
        texts.reserve(corpus.size());
        for (const auto& item : corpus)
            texts.push_back(token_texts(tokenize(item.text)));
    }

    std::size_t size() const noexcept { return texts.size(); }

    /// Index keys per token under the given key function.
    std::vector<std::vector<std::string>> keys(const KeyFunction& key_fn) const
    {
        std::vector<std::vector<std::string>> out;
        out.reserve(texts.size());
        for (const auto& tokens : texts) {
            auto& k = out.emplace_back();
            k.reserve(tokens.size());
            for (const auto& t : tokens)
                k.push_back(key_fn(t));
        }
        return out;
    }
};

inline ScoreColumn score_column(const std::vector<std::vector<std::string>>& keys, const LookupIndex& index,
                                ScoringScheme scheme, std::string name)
{
    ScoreColumn col{std::move(name), {}};
    col.values.reserve(keys.size());
    for (const auto& k : keys)
        col.values.push_back(score_keys(k, index, scheme).value);
    return col;
}

inline ScoreColumn score_column(const std::vector<LabeledText>& corpus, const LookupIndex& index,
                                ScoringScheme scheme, std::string name)
{
    return score_column(TokenizedCorpus(corpus).keys(index.key_function()), index, scheme, std::move(name));
}

// ---------------------------------------------------------------------------
// Coverage

struct CoverageReport {
    std::size_t total_tokens = 0;
    std::size_t unique_tokens = 0;
    std::size_t unique_matched = 0; ///< distinct index keys hit by the corpus
    std::size_t lexicon_size = 0;

    friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

/// Under exact matching unique_matched is the number of distinct token types
/// found in the lexicon. Under stemmed matching several token types can share
/// one stem, so distinct stems hit are counted instead.
inline CoverageReport coverage(const std::vector<LabeledText>& corpus, const Lexicon& lexicon, MatchStrategy strategy)
{
    const auto index = build_index(lexicon, strategy);
    CoverageReport report;
    report.lexicon_size = lexicon.size();
    std::set<std::string> types;
    std::set<std::string> hit_keys;
    for (const auto& item : corpus) {
        const auto tokens = tokenize(item.text);
        report.total_tokens += tokens.size();
        for (const auto& t : tokens) {
            if (!types.insert(t.text).second)
                continue;
            auto key = index.key_for(t.text);
            if (index.find_key(key))
                hit_keys.insert(std::move(key));
        }
    }
    report.unique_tokens = types.size();
    report.unique_matched = hit_keys.size();
    return report;
}

// ---------------------------------------------------------------------------
// Correlation matrix

struct CorrelationReport {
    std::vector<std::string> column_names;
    std::vector<std::vector<Correlation>> pearson;
    std::vector<std::vector<Correlation>> spearman;
};

/// Pairwise Pearson and Spearman over gold followed by the other columns.
/// Cells involving a constant column are undefined (nullopt).
inline CorrelationReport correlation_matrix(const ScoreColumn& gold, const std::vector<ScoreColumn>& columns)
{
    std::vector<const ScoreColumn*> all{&gold};
    for (const auto& c : columns)
        all.push_back(&c);
    for (const auto* c : all)
        if (c->values.size() != gold.values.size())
            throw std::invalid_argument("column '" + c->name + "' has " + std::to_string(c->values.size()) +
                                        " values, gold has " + std::to_string(gold.values.size()));
    if (gold.values.size() < 2)
        throw std::invalid_argument("correlation needs at least two texts");

    const std::size_t n = all.size();
    CorrelationReport report;
    report.pearson.assign(n, std::vector<Correlation>(n));
    report.spearman.assign(n, std::vector<Correlation>(n));
    for (std::size_t i = 0; i < n; ++i) {
        report.column_names.push_back(all[i]->name);
        for (std::size_t j = i; j < n; ++j) {
            Correlation p = pearson(all[i]->values, all[j]->values);
            Correlation s = spearman(all[i]->values, all[j]->values);
            if (i == j) {
                p = p ? Correlation(1.0) : std::nullopt;
                s = s ? Correlation(1.0) : std::nullopt;
            }
            report.pearson[i][j] = report.pearson[j][i] = p;
            report.spearman[i][j] = report.spearman[j][i] = s;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Scheme sweep

struct SchemeResult {
    ScoringScheme scheme;
    Correlation pearson;
    Correlation spearman;
};

/// Correlation with gold of every scoring scheme on the same corpus and index.
inline std::vector<SchemeResult> scheme_sweep(const std::vector<LabeledText>& corpus, const ScoreColumn& gold,
                                              const Lexicon& lexicon, MatchStrategy strategy)
{
    if (gold.values.size() != corpus.size())
        throw std::invalid_argument("gold column does not match corpus size");
    const auto index = build_index(lexicon, strategy);
    const auto keys = TokenizedCorpus(corpus).keys(index.key_function());
    std::vector<SchemeResult> rows;
    for (auto scheme : all_schemes) {
        const auto col = score_column(keys, index, scheme, std::string(to_string(scheme)));
        rows.push_back({scheme, pearson(col.values, gold.values), spearman(col.values, gold.values)});
    }
    return rows;
}

inline std::vector<SchemeResult> scheme_sweep(const std::vector<LabeledText>& corpus, const Lexicon& lexicon,
                                              MatchStrategy strategy)
{
    return scheme_sweep(corpus, gold_column(corpus), lexicon, strategy);
}

// ---------------------------------------------------------------------------
// Learning curve

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the substream for one (size, resample) cell.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t size, std::uint64_t resample)
{
    return splitmix64(splitmix64(splitmix64(seed) ^ size) ^ resample);
}

/// Uniform integer in [0, bound) by rejection, independent of the standard
/// library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

} // namespace detail

/// `count` distinct indices from [0, n), sorted; partial Fisher-Yates.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, std::uint64_t seed)
{
    if (count > n)
        throw std::invalid_argument("sample size exceeds population");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(detail::uniform_below(rng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

struct LearningCurvePoint {
    std::size_t size = 0;
    std::vector<Correlation> pearson_samples; ///< one per resample; nullopt = undefined
    std::vector<Correlation> spearman_samples;
};

struct CurveOptions {
    MatchStrategy strategy = MatchStrategy::exact;
    unsigned threads = 0; ///< 0: hardware concurrency
};

/// Logarithmic grid 5, 10, 20, 50, 100, ... below n, then n itself.
inline std::vector<std::size_t> default_curve_sizes(std::size_t n)
{
    std::vector<std::size_t> sizes;
    for (std::size_t base = 1; 5 * base < n; base *= 10)
        for (std::size_t m : {5, 10, 20})
            if (m * base < n)
                sizes.push_back(m * base);
    if (n > 0)
        sizes.push_back(n);
    return sizes;
}

/// For each size, scores the corpus with `resamples` random sub-lexicons of
/// that many entries (mean-over-all-tokens scheme) and records Pearson and
/// Spearman against gold. Each (size, resample) cell draws from its own
/// substream, so results do not depend on thread count or scheduling.
inline std::vector<LearningCurvePoint> learning_curve(const std::vector<LabeledText>& corpus,
                                                      const ScoreColumn& gold, const Lexicon& lexicon,
                                                      const std::vector<std::size_t>& sizes, std::size_t resamples,
                                                      std::uint64_t seed, CurveOptions options = {})
{
    if (resamples < 1)
        throw std::invalid_argument("resamples must be at least 1");
    if (gold.values.size() != corpus.size())
        throw std::invalid_argument("gold column does not match corpus size");
    for (auto s : sizes)
        if (s > lexicon.size())
            throw std::invalid_argument("curve size " + std::to_string(s) + " exceeds lexicon size " +
                                        std::to_string(lexicon.size()));

    std::vector<std::string> terms;
    terms.reserve(lexicon.size());
    for (const auto& [term, valence] : lexicon.entries())
        terms.push_back(term);

    const auto keys = TokenizedCorpus(corpus).keys(key_function(options.strategy));

    std::vector<LearningCurvePoint> points(sizes.size());
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        points[s].size = sizes[s];
        points[s].pearson_samples.resize(resamples);
        points[s].spearman_samples.resize(resamples);
    }

    const std::size_t jobs = sizes.size() * resamples;
    auto run_job = [&](std::size_t job) {
        const std::size_t s = job / resamples;
        const std::size_t r = job % resamples;
        const auto picked = sample_without_replacement(terms.size(), sizes[s], detail::substream_seed(seed, sizes[s], r));
        std::vector<std::string> chosen;
        chosen.reserve(picked.size());
        for (auto i : picked)
            chosen.push_back(terms[i]);
        const auto index = build_index(sublexicon(chosen, lexicon), options.strategy);
        const auto col = score_column(keys, index, ScoringScheme::mean_all_tokens, "sample");
        points[s].pearson_samples[r] = pearson(col.values, gold.values);
        points[s].spearman_samples[r] = spearman(col.values, gold.values);
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
    if (threads <= 1) {
        for (std::size_t job = 0; job < jobs; ++job)
            run_job(job);
        return points;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t)
        workers.emplace_back([&] {
            for (std::size_t job = next++; job < jobs; job = next++) {
                try {
                    run_job(job);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& w : workers)
        w.join();
    if (failure)
        std::rethrow_exception(failure);
    return points;
}

inline std::vector<LearningCurvePoint> learning_curve(const std::vector<LabeledText>& corpus, const Lexicon& lexicon,
                                                      const std::vector<std::size_t>& sizes, std::size_t resamples,
                                                      std::uint64_t seed, CurveOptions options = {})
{
    return learning_curve(corpus, gold_column(corpus), lexicon, sizes, resamples, seed, options);
}

// ---------------------------------------------------------------------------
// Boxplot summaries

struct FiveNumberSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::size_t defined = 0; ///< number of samples summarized

    friend bool operator==(const FiveNumberSummary&, const FiveNumberSummary&) = default;
};

namespace detail {

inline double median_of_sorted(const double* first, std::size_t n)
{
    return n % 2 ? first[n / 2] : (first[n / 2 - 1] + first[n / 2]) / 2.0;
}

} // namespace detail

/// Five-number summary over the defined samples. Quartiles are medians of the
/// lower and upper halves, with the middle value excluded from both halves
/// when the count is odd; a single sample gives five equal values.
inline FiveNumberSummary summarize_samples(const std::vector<Correlation>& samples)
{
    std::vector<double> v;
    for (const auto& s : samples)
        if (s)
            v.push_back(*s);
    if (v.empty())
        throw std::invalid_argument("no defined samples to summarize");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    FiveNumberSummary out;
    out.defined = n;
    out.min = v.front();
    out.max = v.back();
    out.median = detail::median_of_sorted(v.data(), n);
    if (n == 1) {
        out.q1 = out.q3 = v.front();
    } else {
        const std::size_t half = n / 2;
        out.q1 = detail::median_of_sorted(v.data(), half);
        out.q3 = detail::median_of_sorted(v.data() + (n - half), half);
    }
    return out;
}

struct BoxplotSummary {
    FiveNumberSummary pearson;
    FiveNumberSummary spearman;
};

inline BoxplotSummary summarize_boxplot(const LearningCurvePoint& point)
{
    return {summarize_samples(point.pearson_samples), summarize_samples(point.spearman_samples)};
}

} // namespace valence
