#include <gtest/gtest.h>

#include <sys/wait.h>

#include "test_support.hpp"
#include "valence/report.hpp"

using namespace valence;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(const fixtures::TempDir& dir, const std::string& args)
{
    const auto out = dir / "stdout.txt";
    const auto err = dir / "stderr.txt";
    const std::string cmd = std::string("'") + VALENCE_CLI + "' " + args + " >'" + out.string() + "' 2>'" +
                            err.string() + "'";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, fixtures::slurp(out), fixtures::slurp(err)};
}

std::string afinn()
{
    return fixtures::data_path("AFINN-111.txt");
}

class Cli : public ::testing::Test {
protected:
    fixtures::TempDir dir{"valence-cli"};

    std::string file(const std::string& name, const std::string& content)
    {
        fixtures::write_file(dir / name, content);
        return (dir / name).string();
    }

    std::string corpus()
    {
        return file("corpus.tsv", "t1\tI love this, so good\t8,9,8\n"
                                  "t2\tbad bad day\t2,1,3\n"
                                  "t3\tjust a day\t5,5\n"
                                  "t4\thappy but sad\t6,5\n"
                                  "t5\tterrible awful horrible\t1,1\n");
    }
};

} // namespace

TEST_F(Cli, ScoreSumOfRepeatedWord)
{
    const auto r = run(dir, "score --lexicon " + afinn() + " --raw " + file("in.txt", "good good\n") + " --scheme sum");
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out, "1\t6.0\n");
}

TEST_F(Cli, ScoreEmptyInput)
{
    const auto r = run(dir, "score --lexicon " + afinn() + " --raw " + file("empty.txt", ""));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "");
    const auto c = run(dir, "score --lexicon " + afinn() + " --corpus " + file("empty.tsv", ""));
    EXPECT_EQ(c.status, 0);
    EXPECT_EQ(c.out, "");
}

TEST_F(Cli, ScoreMissingLexiconNamesPath)
{
    const auto r = run(dir, "score --lexicon /nonexistent/list.txt --raw " + file("in.txt", "x\n"));
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("/nonexistent/list.txt"), std::string::npos);
    EXPECT_EQ(r.out, "");
}

TEST_F(Cli, ParseErrorReportsPathAndLine)
{
    const auto lex = file("bad.txt", "good\t3\nbad\tx\n");
    const auto r = run(dir, "score --lexicon " + lex + " --raw " + file("in.txt", "x\n"));
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find(lex + ":2"), std::string::npos) << r.err;
}

TEST_F(Cli, ScoreAllSchemesAndCorpusIds)
{
    const auto r = run(dir, "score --lexicon " + afinn() + " --corpus " + corpus() + " --scheme all");
    EXPECT_EQ(r.status, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 2);
        ++n;
    }
    EXPECT_EQ(n, 25);
    EXPECT_EQ(r.out.rfind("t1\tmean\t", 0), 0u);
}

TEST_F(Cli, EvalMatrixShape)
{
    const auto c = corpus();
    const auto col = file("ext.tsv", "t1\t3\nt2\t-2\nt3\t0\nt4\t1\nt5\t-4\n");
    const auto norms = file("norms.txt", "love\t8.7\ngood\t7.5\nbad\t3\nsad\t1.6\nhappy\t8.2\nterrible\t1.9\n");
    const auto r = run(dir, "eval --lexicon afinn=" + afinn() + " --lexicon norms=" + norms +
                                " --scale -5:0:5 --scale 1:5:9 --corpus " + c + " --column ext=" + col +
                                " --out " + (dir / "o").string());
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = report::Json::parse(fixtures::slurp(dir / "o" / "correlation.json"));
    EXPECT_EQ(j["columns"], report::Json({"gold", "afinn", "norms", "ext"}));
    EXPECT_EQ(j["pearson"].size(), 4u);
    EXPECT_EQ(j["pearson"][0].size(), 4u);
    EXPECT_EQ(j["coverage"]["afinn"]["lexicon_size"], 2462);
    const auto csv = fixtures::slurp(dir / "o" / "correlation_pearson.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
    EXPECT_EQ(csv.rfind("column,gold,afinn,norms,ext\n", 0), 0u);
    EXPECT_NE(r.out.find("Pearson"), std::string::npos);
}

TEST_F(Cli, EvalGoldAsColumnIsAllOnes)
{
    const auto c = corpus();
    // gold means 25/3, 2, 5, 5.5, 1
    const auto col = file("g.tsv", "t1\t8.333333333333334\nt2\t2\nt3\t5\nt4\t5.5\nt5\t1\n");
    const auto r = run(dir, "eval --corpus " + c + " --column copy=" + col + " --format json --out " +
                                (dir / "o").string());
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = report::Json::parse(fixtures::slurp(dir / "o" / "correlation.json"));
    for (const auto& row : j["pearson"])
        for (const auto& v : row)
            EXPECT_NEAR(v.get<double>(), 1.0, 1e-12);
    EXPECT_FALSE(fs::exists(dir / "o" / "correlation_pearson.csv"));
}

TEST_F(Cli, EvalDegenerateColumnFlagged)
{
    const auto col = file("flat.tsv", "t1\t0\nt2\t0\nt3\t0\nt4\t0\nt5\t0\n");
    const auto r = run(dir, "eval --corpus " + corpus() + " --column flat=" + col + " --out " + (dir / "o").string());
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("'flat' is constant"), std::string::npos);
    const auto j = report::Json::parse(fixtures::slurp(dir / "o" / "correlation.json"));
    EXPECT_TRUE(j["pearson"][0][1].is_null());
    EXPECT_EQ(j["degenerate"], report::Json({"flat"}));
}

TEST_F(Cli, EvalMissingColumnIdFails)
{
    const auto col = file("short.tsv", "t1\t0\nt2\t1\n");
    const auto r = run(dir, "eval --corpus " + corpus() + " --column x=" + col + " --out " + (dir / "o").string());
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("t3"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir / "o" / "correlation.json"));
}

TEST_F(Cli, EvalDualColumn)
{
    const auto col = file("ss.tsv", "t1\t4\t-1\nt2\t1\t-3\nt3\t1\t-1\nt4\t2\t-2\nt5\t1\t-5\n");
    const auto r = run(dir, "eval --corpus " + corpus() + " --dual-column ss=" + col + " --format json --out " +
                                (dir / "o").string());
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = report::Json::parse(fixtures::slurp(dir / "o" / "correlation.json"));
    EXPECT_GT(j["pearson"][0][1].get<double>(), 0.9);
}

TEST_F(Cli, CompareIdenticalLexicons)
{
    const auto r = run(dir, "compare --lexicon a=" + afinn() + " --lexicon b=" + afinn() + " --out " +
                                (dir / "o").string());
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("intersection: 2462 terms"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("spearman: 1.0\n"), std::string::npos);
    EXPECT_NE(r.out.find("sign discrepancies: 0"), std::string::npos);
    EXPECT_EQ(fixtures::slurp(dir / "o" / "discrepancies.csv"), "term,a,b\n");
}

TEST_F(Cli, CompareDisjointLexicons)
{
    const auto a = file("a.txt", "good\t3\n");
    const auto b = file("b.txt", "calm\t6\n");
    const auto r = run(dir, "compare --lexicon " + a + " --lexicon " + b + " --scale -5:0:5 --scale 1:5:9 --out " +
                                (dir / "o").string());
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("intersection is empty"), std::string::npos);
}

TEST_F(Cli, CompareWithCorpusEvaluatesSublexicons)
{
    const auto norms = file("norms.txt", "love\t8.7\ngood\t7.5\nbad\t3\nsad\t1.6\nhappy\t8.2\nterrible\t1.9\n");
    const auto r = run(dir, "compare --lexicon afinn=" + afinn() + " --lexicon anew=" + norms +
                                " --scale -5:0:5 --scale 1:5:9 --corpus " + corpus() + " --out " +
                                (dir / "o").string());
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("intersection: 6 terms"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("sub-lexicon pearson"), std::string::npos);
    const auto j = report::Json::parse(fixtures::slurp(dir / "o" / "compare.json"));
    EXPECT_TRUE(j["sublexicon_eval"]["a"]["pearson"].is_number());
}

TEST_F(Cli, PolarityLists)
{
    const auto pos = file("pos.txt", "good\nhappy\n");
    const auto neg = file("neg.txt", "bad\nsad\n");
    const auto r = run(dir, "score --polarity-pos " + pos + " --polarity-neg " + neg + " --raw " +
                                file("in.txt", "good bad bad\n") + " --scheme sum");
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out, "1\t-1.0\n");
}

TEST_F(Cli, CurveWritesFilesAndIsDeterministic)
{
    const std::string base = "curve --lexicon " + afinn() + " --corpus " + corpus() +
                             " --sizes 5,50,full --resamples 4 --seed 7 --out ";
    const auto r1 = run(dir, base + (dir / "o1").string());
    const auto r2 = run(dir, base + (dir / "o2").string() + " --threads 1");
    ASSERT_EQ(r1.status, 0) << r1.err;
    ASSERT_EQ(r2.status, 0) << r2.err;
    for (const char* f : {"curve.csv", "curve_summary.csv", "curve.json"})
        EXPECT_EQ(fixtures::slurp(dir / "o1" / f), fixtures::slurp(dir / "o2" / f)) << f;
    EXPECT_EQ(r1.out, r2.out);
    const auto csv = fixtures::slurp(dir / "o1" / "curve.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 4);
}

TEST_F(Cli, CurveRejectsOversize)
{
    const auto r = run(dir, "curve --lexicon " + afinn() + " --corpus " + corpus() + " --sizes 5,99999 --out " +
                                (dir / "o").string());
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("99999"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_NE(run(dir, "").status, 0);
    EXPECT_NE(run(dir, "score --lexicon " + afinn()).status, 0);
    EXPECT_NE(run(dir, "compare --lexicon " + afinn()).status, 0);
    EXPECT_NE(run(dir, "score --lexicon " + afinn() + " --raw x --scheme bogus").status, 0);
    EXPECT_NE(run(dir, "eval --corpus " + corpus()).status, 0);
    EXPECT_NE(run(dir, "score --lexicon " + afinn() + " --scale 1:2 --raw " + file("in.txt", "x\n")).status, 0);
}
