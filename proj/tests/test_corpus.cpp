#include <fstream>
#include <sstream>

#include "doctest.h"
#include "jsa/corpus.hpp"
#include "jsa/csv.hpp"
#include "jsa/errors.hpp"
#include "support.hpp"

using namespace jsa;

namespace {

const char* kHeader = "article_id,journal_id,pub_year,n_authors,open_access,funded,citations,attention\n";

Parsed<ArticleRecord> parse(const std::string& body, const ArticleParseOptions& opts = {}) {
    std::istringstream in(body);
    return parse_articles(in, opts);
}

ArticleRecord article(std::string id, std::string journal, int year, std::int64_t attention = 0) {
    ArticleRecord a;
    a.article_id = std::move(id);
    a.journal_id = std::move(journal);
    a.pub_year = year;
    a.attention = attention;
    return a;
}

JournalRecord journal(std::string id) {
    JournalRecord j;
    j.journal_id = id;
    j.name = id;
    return j;
}

}  // namespace

TEST_CASE("csv reader handles quotes, embedded separators and CRLF") {
    std::istringstream in("a,\"b,c\",\"say \"\"hi\"\"\"\r\n\"multi\nline\",,x\n");
    csv::Reader r(in);
    auto row = r.next();
    REQUIRE(row);
    CHECK(*row == csv::Row{"a", "b,c", "say \"hi\""});
    CHECK(r.line() == 1);
    row = r.next();
    REQUIRE(row);
    CHECK(*row == csv::Row{"multi\nline", "", "x"});
    CHECK(r.line() == 2);
    CHECK_FALSE(r.next());
}

TEST_CASE("csv reader rejects an unterminated quote") {
    std::istringstream in("a,\"open\n");
    csv::Reader r(in);
    CHECK_THROWS_AS(r.next(), DataError);
}

TEST_CASE("csv escape round-trips through the reader") {
    const csv::Row row = {"plain", "with,comma", "with \"quote\"", "", " padded "};
    std::ostringstream out;
    csv::write_row(out, row);
    std::istringstream in(out.str());
    csv::Reader r(in);
    CHECK(*r.next() == row);
}

TEST_CASE("article row is transcribed field for field") {
    const auto p = parse(std::string(kHeader) + "a1,JX,2019,3,1,0,12,7\n");
    REQUIRE(p.records.size() == 1);
    const ArticleRecord want{"a1", "JX", 2019, 3, true, false, 12, 7};
    CHECK(p.records[0] == want);
    CHECK(p.report.ok());
    CHECK(p.report.read == 1);
    CHECK(p.report.accepted == 1);
}

TEST_CASE("zero authors rejects the row with a reason") {
    const auto p = parse(std::string(kHeader) + "a1,JX,2019,0,1,0,12,7\na2,JX,2019,2,1,0,12,7\n");
    CHECK(p.records.size() == 1);
    REQUIRE(p.report.errors.size() == 1);
    CHECK(p.report.errors[0].row == 2);
    CHECK(p.report.errors[0].field == "n_authors");
    CHECK(p.report.errors[0].message == "n_authors must be ≥ 1");
    CHECK(p.report.rejected == 1);
    CHECK(p.report.accepted + p.report.rejected == p.report.read);
}

TEST_CASE("unparseable cells reject rows and keep order of the rest") {
    const auto p = parse(std::string(kHeader) +
                         "a1,JX,2019,2,yes,0,1,1\n"
                         "a2,JX,2019,2,1,0,1,1\n"
                         "a3,JX,20x9,2,1,0,1,1\n"
                         "a4,JX,2019,2,1,0,-4,1\n"
                         "a5,JX,2018,2,true,FALSE,1,1\n");
    REQUIRE(p.records.size() == 2);
    CHECK(p.records[0].article_id == "a2");
    CHECK(p.records[1].article_id == "a5");
    CHECK(p.records[1].open_access);
    CHECK(p.report.errors.size() == 3);
    CHECK(p.report.accepted + p.report.rejected == p.report.read);
}

TEST_CASE("blank attention becomes 0 with a warning and re-exports as 0") {
    const auto p = parse(std::string(kHeader) + "a1,JX,2019,3,1,0,12,\n");
    REQUIRE(p.records.size() == 1);
    CHECK(p.records[0].attention == 0);
    REQUIRE(p.report.warnings.size() == 1);
    CHECK(p.report.warnings[0].field == "attention");
    std::ostringstream out;
    write_articles(out, p.records);
    CHECK(out.str() == std::string(kHeader) + "a1,JX,2019,3,1,0,12,0\n");
}

TEST_CASE("publication years outside the accepted range are rejected") {
    ArticleParseOptions o;
    o.years = {2015, 2016};
    const auto p = parse(std::string(kHeader) + "a1,JX,2014,1,0,0,0,0\na2,JX,2015,1,0,0,0,0\n", o);
    CHECK(p.records.size() == 1);
    CHECK(p.report.rejected == 1);
}

TEST_CASE("schema errors are fatal") {
    CHECK_THROWS_AS(parse(""), SchemaError);
    CHECK_THROWS_AS(parse("article_id,journal_id\na,b\n"), SchemaError);
}

TEST_CASE("column mapping renames source headers") {
    std::istringstream m("# export from a bibliographic database\nattention = Altmetric Score\njournal_id=Source\n");
    ArticleParseOptions o;
    o.mapping = ColumnMapping::parse(m);
    const auto p = parse("article_id,Source,pub_year,n_authors,open_access,funded,citations,Altmetric Score\n"
                         "x,J,2020,2,0,1,3,44\n",
                         o);
    REQUIRE(p.records.size() == 1);
    CHECK(p.records[0].journal_id == "J");
    CHECK(p.records[0].attention == 44);

    std::istringstream bad("not_a_column=foo\n");
    CHECK_THROWS_AS(ColumnMapping::parse(bad), SchemaError);
    std::istringstream missing("attention=Absent\n");
    ArticleParseOptions o2;
    o2.mapping = ColumnMapping::parse(missing);
    CHECK_THROWS_AS(parse(kHeader, o2), SchemaError);
}

TEST_CASE("journal fixture parses with boundary warnings only") {
    std::ifstream in(testing::data_path("journals_2020.csv"));
    REQUIRE(in);
    const auto p = parse_journals(in);
    CHECK(p.records.size() == 76);
    CHECK(p.report.errors.empty());
    const JournalRecord* gov = nullptr;
    for (const auto& j : p.records) {
        if (j.journal_id == "GOV INFORM Q") gov = &j;
    }
    REQUIRE(gov);
    CHECK(gov->jif == 6.695);
    CHECK(gov->jif_5yr == 8.293);
    CHECK(gov->jif_percentile == 91.18);
    CHECK(gov->jif_quartile == Quartile::Q1);
    std::size_t boundary = 0;
    for (const auto& w : p.report.warnings) {
        CHECK(w.field == "jif_quartile");
        if (w.message.find("boundary") != std::string::npos) ++boundary;
    }
    CHECK(boundary >= 3);
}

TEST_CASE("journal rows: percentile out of range rejects, duplicate id is fatal") {
    const std::string header = "journal_id,name,n_articles_2020,jif,jif_5yr,jif_percentile,jif_quartile\n";
    std::istringstream in(header + "A,A,10,1,1,101,Q1\nB,B,10,1,1,60,Q2\n");
    const auto p = parse_journals(in);
    CHECK(p.records.size() == 1);
    CHECK(p.report.errors.size() == 1);
    CHECK_FALSE(p.records[0].reported_attention);

    std::istringstream dup(header + "A,A,10,1,1,60,Q2\nA,A2,10,1,1,60,Q2\n");
    CHECK_THROWS_AS(parse_journals(dup), SchemaError);
}

TEST_CASE("journal quartile mismatches are warnings") {
    const std::string header = "journal_id,name,n_articles_2020,jif,jif_5yr,jif_percentile,jif_quartile\n";
    std::istringstream in(header + "A,A,10,1,1,90,Q3\nB,B,10,1,1,60,Q1\nC,C,10,1,1,60,Q2\n");
    const auto p = parse_journals(in);
    CHECK(p.records.size() == 3);
    CHECK(p.report.errors.empty());
    CHECK(p.report.warnings.size() == 2);
}

TEST_CASE("journal write/parse round trip") {
    std::ifstream in(testing::data_path("journals_2020.csv"));
    const auto p = parse_journals(in);
    std::ostringstream out;
    write_journals(out, p.records);
    std::istringstream again(out.str());
    CHECK(parse_journals(again).records == p.records);
}

TEST_CASE("nominal quartile thresholds") {
    CHECK(nominal_quartile(100) == Quartile::Q1);
    CHECK(nominal_quartile(75) == Quartile::Q1);
    CHECK(nominal_quartile(74.71) == Quartile::Q2);
    CHECK(nominal_quartile(50) == Quartile::Q2);
    CHECK(nominal_quartile(25.29) == Quartile::Q3);
    CHECK(nominal_quartile(0) == Quartile::Q4);
    CHECK(parse_quartile("q3") == Quartile::Q3);
    CHECK_FALSE(parse_quartile("Q5"));
}

TEST_CASE("corpus validation") {
    const Corpus ok({article("a", "J1", 2019), article("b", "J2", 2020)}, {journal("J1"), journal("J2")});
    const auto r = validate_corpus(ok);
    CHECK(r.errors.empty());
    CHECK(r.warnings.empty());

    const Corpus bad({article("a", "J1", 2019), article("a", "J9", 2020), article("c", "J1", 2030)},
                     {journal("J1")});
    const auto rb = validate_corpus(bad);
    REQUIRE(rb.errors.size() == 2);
    CHECK(rb.errors[0].message.find("duplicate id") != std::string::npos);
    REQUIRE(rb.warnings.size() == 1);
    CHECK(rb.warnings[0].message.find("unresolved journal") != std::string::npos);
    CHECK(bad.articles().size() == 3);
}

TEST_CASE("corpus index and duplicate journals") {
    const Corpus c({article("a", "J1", 2019, 3), article("b", "J1", 2019, 4), article("c", "J2", 2020)}, {});
    CHECK(c.articles_in("J1", 2019).size() == 2);
    CHECK(c.articles_in("J1", 2020).empty());
    CHECK(c.article_journal_ids() == std::vector<std::string>{"J1", "J2"});
    CHECK(c.years() == std::vector<int>{2019, 2020});
    CHECK_THROWS_AS(Corpus({}, {journal("J1"), journal("J1")}), DataError);
}

TEST_CASE("filter_corpus") {
    const Corpus c({article("a", "J1", 2018), article("b", "J1", 2019), article("c", "J2", 2019)},
                   {journal("J1"), journal("J2")});
    CHECK(filter_corpus(c, {2012, 2021}) == c);
    const auto y = filter_corpus(c, {2019, 2019});
    CHECK(y.articles().size() == 2);
    const auto none = filter_corpus(c, {2015, 2015});
    CHECK(none.empty());
    CHECK(none.journals().empty());
    const auto j2 = filter_corpus(c, {2012, 2021}, std::set<std::string>{"J2"});
    CHECK(j2.articles().size() == 1);
    CHECK(j2.journals().size() == 1);
    CHECK_THROWS_AS(filter_corpus(c, {2020, 2019}), UsageError);
}

TEST_CASE("merge_corpora keeps the first journal record") {
    JournalRecord j1b = journal("J1");
    j1b.name = "other";
    const Corpus a({article("a", "J1", 2019)}, {journal("J1")});
    const Corpus b({article("b", "J2", 2019)}, {j1b, journal("J2")});
    const auto m = merge_corpora(a, b);
    CHECK(m.articles().size() == 2);
    CHECK(m.journals().size() == 2);
    CHECK(m.find_journal("J1")->name == "J1");
}
