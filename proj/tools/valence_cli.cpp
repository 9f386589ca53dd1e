// valence: batch scoring, evaluation, lexicon comparison and learning curves.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "valence/valence.hpp"

namespace fs = std::filesystem;
using namespace valence;

namespace {

/// Command-line failure that is the user's fault (bad flag combination).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> lexicons;
    std::vector<std::string> scales;
    std::string polarity_pos;
    std::string polarity_neg;
    std::string corpus;
    std::string raw;
    std::string match = "exact";
    std::string scheme = "mean";
    std::vector<std::string> columns;
    std::vector<std::string> dual_columns;
    std::string gold_name = "gold";
    std::uint64_t seed = 1;
    std::string sizes;
    std::size_t resamples = 50;
    unsigned threads = 0;
    std::string format;
    std::string out;
};

/// Phrases can never match a single token, so they are dropped on load.
Lexicon words_only(const Lexicon& lex)
{
    auto words = strip_phrases(lex);
    if (words.size() != lex.size())
        std::cerr << "note: " << lex.name() << ": dropped " << lex.size() - words.size()
                  << " multiword entries\n";
    return words;
}

/// Splits "NAME=PATH"; a bare PATH takes its file stem as the name.
std::pair<std::string, std::string> named_path(const std::string& arg)
{
    const auto eq = arg.find('=');
    if (eq != std::string::npos && eq > 0 && arg.substr(0, eq).find('/') == std::string::npos)
        return {arg.substr(0, eq), arg.substr(eq + 1)};
    return {fs::path(arg).stem().string(), arg};
}

std::vector<Lexicon> load_lexicons(const Options& o)
{
    const std::size_t n = o.lexicons.size();
    if (o.scales.size() > 1 && o.scales.size() != n)
        throw UsageError("give --scale once for all lexicons or once per --lexicon (" + std::to_string(n) +
                         "), got " + std::to_string(o.scales.size()));
    std::vector<Lexicon> out;
    std::set<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        const auto [name, path] = named_path(o.lexicons[i]);
        const auto scale = o.scales.empty()
                               ? scales::strength()
                               : ValenceScale::parse(o.scales.size() == 1 ? o.scales[0] : o.scales[i]);
        out.push_back(words_only(load_valence_file(path, scale, name)));
    }
    if (!o.polarity_pos.empty() || !o.polarity_neg.empty()) {
        if (o.polarity_pos.empty() || o.polarity_neg.empty())
            throw UsageError("--polarity-pos and --polarity-neg must be given together");
        auto [name, pos_path] = named_path(o.polarity_pos);
        if (pos_path == o.polarity_pos)
            name = "polarity";
        auto pos_in = text::open_input(pos_path);
        auto neg_in = text::open_input(o.polarity_neg);
        out.push_back(words_only(from_polarity_list(load_term_list(pos_in), load_term_list(neg_in), name)));
    }
    for (const auto& lex : out)
        if (!names.insert(lex.name()).second)
            throw UsageError("duplicate lexicon name '" + lex.name() + "'; use NAME=PATH");
    return out;
}

std::vector<LabeledText> load_texts(const Options& o)
{
    if (!o.corpus.empty() && !o.raw.empty())
        throw UsageError("give either --corpus or --raw, not both");
    if (!o.raw.empty()) {
        auto in = text::open_input(o.raw);
        return load_raw_texts(in);
    }
    if (o.corpus.empty())
        throw UsageError("--corpus is required");
    return load_corpus_file(o.corpus);
}

std::vector<ScoringScheme> schemes(const Options& o)
{
    if (o.scheme == "all")
        return {all_schemes.begin(), all_schemes.end()};
    return {parse_scoring_scheme(o.scheme)};
}

bool want_csv(const Options& o)
{
    return o.format.empty() || o.format == "csv";
}

bool want_json(const Options& o)
{
    return o.format.empty() || o.format == "json";
}

/// Files are rendered in memory first and only written once the whole command
/// has succeeded; each one goes through a temp file and a rename.
class OutputSet {
public:
    explicit OutputSet(std::string dir) : dir_(std::move(dir)) {}

    void add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }

    void add_json(const std::string& name, const report::Json& j) { add(name, j.dump(2) + "\n"); }

    void commit() const
    {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec)
            throw IoError(dir_, "cannot create output directory: " + ec.message());
        for (const auto& [name, content] : files_) {
            const fs::path target = fs::path(dir_) / name;
            const fs::path tmp = fs::path(dir_) / ("." + name + ".tmp" + std::to_string(::getpid()));
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                out << content;
                out.flush();
                if (!out)
                    throw IoError(tmp.string(), "write failed");
            }
            fs::rename(tmp, target, ec);
            if (ec) {
                fs::remove(tmp);
                throw IoError(target.string(), "cannot rename into place: " + ec.message());
            }
        }
    }

private:
    std::string dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

template <class Writer>
std::string render(Writer&& w)
{
    std::ostringstream s;
    w(s);
    return s.str();
}

std::string cell(const Correlation& c)
{
    return report::csv_cell(c);
}

// ---------------------------------------------------------------------------

int cmd_score(const Options& o)
{
    const auto lexicons = load_lexicons(o);
    if (lexicons.empty())
        throw UsageError("score needs a --lexicon or a polarity list");
    const auto texts = load_texts(o);
    const auto strategy = parse_match_strategy(o.match);
    const auto chosen = schemes(o);

    std::ostringstream lines;
    for (const auto& lex : lexicons) {
        const auto index = build_index(lex, strategy);
        const TokenizedCorpus tokenized(texts);
        const auto keys = tokenized.keys(index.key_function());
        for (std::size_t i = 0; i < texts.size(); ++i)
            for (auto scheme : chosen) {
                lines << texts[i].id;
                if (lexicons.size() > 1)
                    lines << '\t' << lex.name();
                if (chosen.size() > 1)
                    lines << '\t' << to_string(scheme);
                lines << '\t' << text::format_real(score_keys(keys[i], index, scheme).value) << '\n';
            }
    }
    if (o.out.empty()) {
        std::cout << lines.str();
    } else {
        OutputSet files(o.out);
        files.add("scores.tsv", lines.str());
        files.commit();
    }
    return 0;
}

int cmd_eval(const Options& o)
{
    const auto lexicons = load_lexicons(o);
    if (!o.raw.empty())
        throw UsageError("eval needs a rated --corpus, not --raw");
    const auto corpus = load_texts(o);
    const auto strategy = parse_match_strategy(o.match);
    const auto chosen = schemes(o);

    std::vector<ScoreColumn> columns;
    report::Json coverage_json = report::Json::object();
    const TokenizedCorpus tokenized(corpus);
    for (const auto& lex : lexicons) {
        const auto index = build_index(lex, strategy);
        const auto keys = tokenized.keys(index.key_function());
        for (auto scheme : chosen) {
            auto name = chosen.size() > 1 ? lex.name() + ":" + std::string(to_string(scheme)) : lex.name();
            columns.push_back(score_column(keys, index, scheme, std::move(name)));
        }
        coverage_json[lex.name()] = report::to_json(coverage(corpus, lex, strategy));
    }
    for (const auto& arg : o.columns) {
        const auto [name, path] = named_path(arg);
        auto in = text::open_input(path);
        columns.push_back(load_score_column(in, corpus, name, path));
    }
    for (const auto& arg : o.dual_columns) {
        const auto [name, path] = named_path(arg);
        auto in = text::open_input(path);
        columns.push_back(load_dual_column(in, corpus, name, path));
    }
    if (columns.empty())
        throw UsageError("eval needs at least one --lexicon, --column or --dual-column");

    const auto gold = gold_column(corpus, o.gold_name);
    std::set<std::string> seen{gold.name};
    for (const auto& c : columns)
        if (!seen.insert(c.name).second)
            throw UsageError("duplicate column name '" + c.name + "'");
    const auto result = correlation_matrix(gold, columns);

    std::vector<std::string> degenerate;
    for (std::size_t i = 0; i < result.column_names.size(); ++i)
        if (!result.pearson[i][i])
            degenerate.push_back(result.column_names[i]);

    OutputSet files(o.out.empty() ? "." : o.out);
    if (want_csv(o)) {
        files.add("correlation_pearson.csv",
                  render([&](auto& s) { report::write_matrix_csv(s, result.column_names, result.pearson); }));
        files.add("correlation_spearman.csv",
                  render([&](auto& s) { report::write_matrix_csv(s, result.column_names, result.spearman); }));
    }
    if (want_json(o)) {
        auto j = report::to_json(result);
        j["texts"] = corpus.size();
        j["match"] = std::string(to_string(strategy));
        j["scheme"] = o.scheme;
        j["coverage"] = coverage_json;
        j["degenerate"] = degenerate;
        files.add_json("correlation.json", j);
    }
    files.commit();

    std::cout << "texts: " << corpus.size() << '\n';
    for (const auto& lex : lexicons) {
        const auto& c = coverage_json[lex.name()];
        std::cout << "coverage " << lex.name() << ": " << c["unique_matched"].get<std::size_t>() << " of "
                  << c["unique_tokens"].get<std::size_t>() << " token types matched, lexicon size "
                  << c["lexicon_size"].get<std::size_t>() << '\n';
    }
    std::cout << "\nPearson\n";
    report::write_triangle_table(std::cout, result.column_names, result.pearson);
    std::cout << "\nSpearman\n";
    report::write_triangle_table(std::cout, result.column_names, result.spearman);
    for (const auto& name : degenerate)
        std::cout << "warning: column '" << name << "' is constant; its correlations are undefined\n";
    return 0;
}

/// Entries of `lex` whose index key is one of `keys`.
Lexicon restrict_to_keys(const Lexicon& lex, const std::vector<std::string>& keys, MatchStrategy strategy)
{
    const std::set<std::string, std::less<>> wanted(keys.begin(), keys.end());
    const auto key_fn = key_function(strategy);
    Lexicon::Map kept;
    for (const auto& [term, valence] : lex.entries())
        if (wanted.contains(key_fn(term)))
            kept.emplace(term, valence);
    return Lexicon(lex.name(), lex.scale(), kept);
}

int cmd_compare(const Options& o)
{
    const auto lexicons = load_lexicons(o);
    if (lexicons.size() != 2)
        throw UsageError("compare needs exactly two lexicons, got " + std::to_string(lexicons.size()));
    if (o.scheme == "all")
        throw UsageError("compare takes a single --scheme");
    const auto& a = lexicons[0];
    const auto& b = lexicons[1];
    const auto strategy = parse_match_strategy(o.match);
    std::optional<std::vector<LabeledText>> corpus;
    if (!o.corpus.empty())
        corpus = load_corpus_file(o.corpus);

    const auto r = intersect(a, b, strategy);
    const auto disc = sign_discrepancies(r, a.scale().neutral(), b.scale().neutral());
    const Correlation rho = r.size() >= 2 ? intersection_rank_correlation(r) : std::nullopt;

    auto j = report::to_json(r, disc);
    j["lexicon_a"] = a.name();
    j["lexicon_b"] = b.name();
    j["spearman"] = report::json_value(rho);

    std::optional<std::pair<Correlation, Correlation>> sub_pearson;
    if (corpus && !r.terms.empty()) {
        const auto scheme = parse_scoring_scheme(o.scheme);
        const auto gold = gold_column(*corpus, o.gold_name);
        report::Json sub = report::Json::object();
        Correlation pa, pb;
        for (const auto* lex : {&a, &b}) {
            const auto index = build_index(restrict_to_keys(*lex, r.terms, strategy), strategy);
            const auto col = score_column(*corpus, index, scheme, lex->name());
            const auto p = pearson(col.values, gold.values);
            (lex == &a ? pa : pb) = p;
            sub[lex == &a ? "a" : "b"] =
                report::Json{{"pearson", report::json_value(p)},
                             {"spearman", report::json_value(spearman(col.values, gold.values))}};
        }
        sub["scheme"] = o.scheme;
        j["sublexicon_eval"] = sub;
        sub_pearson = {pa, pb};
    }

    OutputSet files(o.out.empty() ? "." : o.out);
    if (want_csv(o)) {
        files.add("intersection.csv", render([&](auto& s) { write_intersection_csv(s, r, a.name(), b.name()); }));
        files.add("discrepancies.csv", render([&](auto& s) {
                      write_discrepancy_csv(s, r, a.scale().neutral(), b.scale().neutral(), a.name(), b.name());
                  }));
    }
    if (want_json(o))
        files.add_json("compare.json", j);
    files.commit();

    if (r.terms.empty()) {
        std::cout << "intersection is empty: " << a.name() << " and " << b.name() << " share no terms\n";
        return 0;
    }
    std::cout << "intersection: " << r.size() << " terms\n"
              << "spearman: " << cell(rho) << '\n'
              << "sign discrepancies: " << disc.size() << '\n';
    if (sub_pearson)
        std::cout << "sub-lexicon pearson vs " << o.gold_name << ": " << a.name() << " " << cell(sub_pearson->first)
                  << ", " << b.name() << " " << cell(sub_pearson->second) << '\n';
    return 0;
}

std::vector<std::size_t> parse_sizes(const std::string& list, std::size_t full)
{
    if (list.empty())
        return default_curve_sizes(full);
    std::vector<std::size_t> sizes;
    for (auto part : text::split(list, ',')) {
        part = text::trim(part);
        if (part == "full") {
            sizes.push_back(full);
            continue;
        }
        const auto v = text::parse_int(part);
        if (!v || *v < 1)
            throw UsageError("--sizes entries must be positive integers or 'full', got '" + std::string(part) + "'");
        if (static_cast<std::size_t>(*v) > full)
            throw UsageError("curve size " + std::to_string(*v) + " exceeds lexicon size " + std::to_string(full));
        sizes.push_back(static_cast<std::size_t>(*v));
    }
    return sizes;
}

int cmd_curve(const Options& o)
{
    const auto lexicons = load_lexicons(o);
    if (lexicons.size() != 1)
        throw UsageError("curve needs exactly one lexicon, got " + std::to_string(lexicons.size()));
    const auto& lex = lexicons[0];
    const auto sizes = parse_sizes(o.sizes, lex.size());
    if (o.resamples < 1)
        throw UsageError("--resamples must be at least 1");
    if (!o.raw.empty())
        throw UsageError("curve needs a rated --corpus, not --raw");
    const auto corpus = load_texts(o);
    const auto strategy = parse_match_strategy(o.match);

    const auto points =
        learning_curve(corpus, gold_column(corpus, o.gold_name), lex, sizes, o.resamples, o.seed, {strategy, o.threads});

    OutputSet files(o.out.empty() ? "." : o.out);
    if (want_csv(o)) {
        files.add("curve.csv", render([&](auto& s) { report::write_curve_csv(s, points); }));
        files.add("curve_summary.csv", render([&](auto& s) { report::write_curve_summary_csv(s, points); }));
    }
    if (want_json(o)) {
        report::Json j{{"lexicon", lex.name()},
                       {"lexicon_size", lex.size()},
                       {"match", std::string(to_string(strategy))},
                       {"seed", o.seed},
                       {"resamples", o.resamples},
                       {"points", report::to_json(points)}};
        files.add_json("curve.json", j);
    }
    files.commit();

    std::cout << "size  median pearson  median spearman\n";
    for (const auto& p : points) {
        auto median = [](const std::vector<Correlation>& s) -> Correlation {
            for (const auto& v : s)
                if (v)
                    return summarize_samples(s).median;
            return std::nullopt;
        };
        std::cout << p.size << "  " << cell(median(p.pearson_samples)) << "  " << cell(median(p.spearman_samples))
                  << '\n';
    }
    return 0;
}

void add_lexicon_options(CLI::App* cmd, Options& o)
{
    cmd->add_option("--lexicon", o.lexicons, "Valence list as [NAME=]PATH (term<TAB>value per line)");
    cmd->add_option("--scale", o.scales, "MIN:NEUTRAL:MAX, once for all lexicons or once per --lexicon")
        ->default_str("-5:0:5");
    cmd->add_option("--polarity-pos", o.polarity_pos, "Positive word list as [NAME=]PATH");
    cmd->add_option("--polarity-neg", o.polarity_neg, "Negative word list");
    cmd->add_option("--match", o.match, "Token matching")
        ->check(CLI::IsMember({"exact", "stemmed"}))
        ->capture_default_str();
}

void add_output_options(CLI::App* cmd, Options& o)
{
    cmd->add_option("--format", o.format, "Write only csv or only json files (default: both)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "Output directory (default: current directory)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lexicon-based sentiment scoring and evaluation"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> scheme_names{"mean", "sum", "mean-matched", "extreme", "quantized", "all"};

    auto* score = app.add_subcommand("score", "Score each text; prints id<TAB>value");
    add_lexicon_options(score, o);
    score->add_option("--corpus", o.corpus, "Corpus TSV: id<TAB>text<TAB>ratings");
    score->add_option("--raw", o.raw, "Plain text, one text per line; ids are line numbers");
    score->add_option("--scheme", o.scheme)->check(CLI::IsMember(scheme_names))->capture_default_str();
    score->add_option("--out", o.out, "Write scores.tsv here instead of standard output");

    auto* eval = app.add_subcommand("eval", "Correlate lexicon scores and external columns with gold");
    add_lexicon_options(eval, o);
    eval->add_option("--corpus", o.corpus, "Rated corpus TSV")->required();
    eval->add_option("--scheme", o.scheme)->check(CLI::IsMember(scheme_names))->capture_default_str();
    eval->add_option("--column", o.columns, "External scores as NAME=PATH (id<TAB>value)");
    eval->add_option("--dual-column", o.dual_columns, "Dual-strength scores as NAME=PATH (id<TAB>pos<TAB>neg)");
    eval->add_option("--gold-name", o.gold_name)->capture_default_str();
    add_output_options(eval, o);

    auto* compare = app.add_subcommand("compare", "Intersect two lexicons and compare their valences");
    add_lexicon_options(compare, o);
    compare->add_option("--corpus", o.corpus, "Optional rated corpus for sub-lexicon evaluation");
    compare->add_option("--scheme", o.scheme)->check(CLI::IsMember(scheme_names))->capture_default_str();
    compare->add_option("--gold-name", o.gold_name)->capture_default_str();
    add_output_options(compare, o);

    auto* curve = app.add_subcommand("curve", "Learning curve over random sub-lexicons");
    add_lexicon_options(curve, o);
    curve->add_option("--corpus", o.corpus, "Rated corpus TSV")->required();
    curve->add_option("--sizes", o.sizes, "Comma-separated sizes, 'full' for the whole lexicon (default: 5,10,20,50,...)");
    curve->add_option("--resamples", o.resamples)->capture_default_str();
    curve->add_option("--seed", o.seed)->capture_default_str();
    curve->add_option("--threads", o.threads, "Worker threads (0: all cores); results do not depend on it")
        ->capture_default_str();
    curve->add_option("--gold-name", o.gold_name)->capture_default_str();
    add_output_options(curve, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (score->parsed())
            return cmd_score(o);
        if (eval->parsed())
            return cmd_eval(o);
        if (compare->parsed())
            return cmd_compare(o);
        return cmd_curve(o);
    } catch (const UsageError& e) {
        std::cerr << "valence: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "valence: error: " << e.what() << '\n';
        return 1;
    }
}
