#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "jsa/cli.hpp"
#include "jsa/errors.hpp"
#include "jsa/pipeline.hpp"
#include "jsa/synth.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace jsa;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct Fixture {
    fs::path dir;
    std::string articles;
    std::string journals;
    testing::PlantedCorpus pc;

    Fixture() : pc(testing::planted_corpus(3, 8, 20)) {
        dir = fs::temp_directory_path() / ("jsa_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        articles = (dir / "articles.csv").string();
        journals = (dir / "journals.csv").string();
        std::ofstream a(articles);
        write_articles(a, pc.articles);
        std::ofstream j(journals);
        write_journals(j, pc.journals);
    }
    ~Fixture() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("usage errors exit 2 with usage text") {
    auto r = run({});
    CHECK(r.code == cli::kExitUsage);
    r = run({"frobnicate"});
    CHECK(r.code == cli::kExitUsage);
    r = run({"describe", "--collected", "2022"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--articles") != std::string::npos);
    CHECK(r.err.find("Usage") != std::string::npos);
    r = run({"regress", "--articles", "a.csv", "--journals", "j.csv", "--year", "2019", "--intercept", "maybe"});
    CHECK(r.code == cli::kExitUsage);
    r = run({"describe", "--articles", "a.csv", "--collected", "2022", "--format", "xml"});
    CHECK(r.code == cli::kExitUsage);
    r = run({"--help"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("synth-windows") != std::string::npos);
}

TEST_CASE("missing input files are data errors") {
    const auto r = run({"describe", "--articles", "/nonexistent/articles.csv", "--collected", "2022"});
    CHECK(r.code == cli::kExitData);
}

TEST_CASE("regress prints the coefficient table") {
    Fixture f;
    auto r = run({"regress", "--articles", f.articles, "--journals", f.journals, "--year", "2019", "--window", "3",
                  "--intercept", "none", "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["rows"].size() == 6);
    CHECK(j["rows"][0]["Variable"] == pipeline::kJournalAttention);
    CHECK(j["rows"][0]["B (Coeff.)"].get<double>() == doctest::Approx(74.0).epsilon(1e-10));
    CHECK(j["rows"][5]["B (Coeff.)"].get<double>() == doctest::Approx(-78.0).epsilon(1e-10));

    r = run({"regress", "--articles", f.articles, "--journals", f.journals, "--year", "2019"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("Constant") != std::string::npos);
    CHECK(r.out.find("Adjusted R-square") != std::string::npos);
    CHECK(r.out.find("VIF") != std::string::npos);

    r = run({"regress", "--articles", f.articles, "--journals", f.journals, "--year", "2019", "--emit", "histogram",
             "--bins", "5"});
    REQUIRE(r.code == cli::kExitOk);

    r = run({"regress", "--articles", f.articles, "--journals", f.journals, "--year", "2005"});
    CHECK(r.code == cli::kExitData);
}

TEST_CASE("describe has the marginal variation column and an aggregate row") {
    Fixture f;
    const auto r = run({"describe", "--articles", f.articles, "--collected", "2022", "--format", "markdown"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("Marg. Var.") != std::string::npos);
    CHECK(r.out.find("| All |") != std::string::npos);
}

TEST_CASE("validate reports and sets the exit code") {
    Fixture f;
    auto r = run({"validate", "--articles", f.articles, "--journals", f.journals});
    CHECK(r.code == cli::kExitOk);
    std::ofstream bad(f.dir / "bad.csv");
    bad << "article_id,journal_id,pub_year,n_authors,open_access,funded,citations,attention\n"
           "x,PJ1,2019,0,1,0,1,1\n";
    bad.close();
    r = run({"validate", "--articles", (f.dir / "bad.csv").string()});
    CHECK(r.code == cli::kExitData);
    CHECK(r.out.find("n_authors must be") != std::string::npos);
    r = run({"validate"});
    CHECK(r.code == cli::kExitUsage);
}

TEST_CASE("scatter counts zero-attention articles") {
    Fixture f;
    auto arts = f.pc.articles;
    arts[0].attention = 0;
    std::ofstream a(f.dir / "z.csv");
    write_articles(a, arts);
    a.close();
    const auto r = run({"scatter", "--articles", (f.dir / "z.csv").string(), "--journals", f.journals, "--year",
                        "2019", "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"].size() == 8 * 20);
    CHECK(j["footnotes"][0].get<std::string>().rfind("1 article", 0) == 0);
    const auto missing = run({"scatter", "--articles", f.articles, "--journals", f.journals, "--year", "2012"});
    CHECK(missing.code == cli::kExitData);
}

TEST_CASE("every subcommand is repeatable byte for byte") {
    Fixture f;
    const std::vector<std::vector<std::string>> cmds = {
        {"validate", "--articles", f.articles, "--journals", f.journals},
        {"describe", "--articles", f.articles, "--collected", "2022"},
        {"journal-attention", "--articles", f.articles, "--year", "2021", "--threads", "3"},
        {"correlate", "--articles", f.articles, "--journals", f.journals, "--year", "2019"},
        {"regress", "--articles", f.articles, "--journals", f.journals, "--year", "2019", "--emit", "residuals"},
        {"quartiles", "--journals", f.journals, "--metric", "jif5"},
        {"scatter", "--articles", f.articles, "--journals", f.journals, "--year", "2019"},
        {"synth-windows", "--runs", "4", "--threads", "2", "--seed", "9"},
    };
    for (const auto& c : cmds) {
        CAPTURE(c[0]);
        const auto a = run(c);
        const auto b = run(c);
        CHECK(a.code == cli::kExitOk);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("output file and dumped corpus") {
    Fixture f;
    const auto out = (f.dir / "dump.csv").string();
    const auto r = run({"synth-windows", "--dump-corpus", "--seed", "4", "--n-journals", "3", "--out", out});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(out);
    const auto parsed = parse_articles(in);
    synth::SynthConfig cfg;
    cfg.seed = 4;
    cfg.n_journals = 3;
    CHECK(parsed.records == synth::generate_corpus(cfg).articles());

    const auto w = run({"synth-windows", "--articles", out, "--windows", "1,2,3"});
    CHECK(w.code == cli::kExitOk);
    const auto bad = run({"synth-windows", "--windows", "1,x"});
    CHECK(bad.code == cli::kExitUsage);
}
