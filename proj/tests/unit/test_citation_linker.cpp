#include "citecorr/arxiv_id.hpp"
#include "citecorr/citation_linker.hpp"
#include "citecorr/journal_ref.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <fstream>

using namespace citecorr;
namespace ct = citecorr::testing;

namespace {

const nlohmann::json& annotations()
{
    static const auto doc =
        nlohmann::json::parse(ct::read_text(ct::fixture_dir() / "annotations" / "references.json"));
    return doc;
}

ArticleRecord article(const std::string& id, const std::string& author, JournalRef ref)
{
    ArticleRecord a;
    a.id = id;
    a.first_deposit = Date::from_ymd(1999, 1, 1);
    a.subfield = archive_prefix(id);
    a.authors = {author};
    a.journal_ref = ref;
    return a;
}

} // namespace

TEST_CASE("identifier extraction on annotated references")
{
    for (const auto& a : annotations()) {
        std::string raw = a.at("raw");
        CAPTURE(raw);
        CHECK(extract_identifiers(raw) == a.at("identifiers").get<std::vector<std::string>>());
    }
}

TEST_CASE("tuple extraction on annotated references")
{
    for (const auto& a : annotations()) {
        std::string raw = a.at("raw");
        CAPTURE(raw);
        auto got = extract_bib_tuple(raw);
        const auto& want = a.at("tuple");
        if (want.is_null()) {
            CHECK_FALSE(got);
            continue;
        }
        REQUIRE(got);
        CHECK(fold_journal_title(got->journal) == fold_journal_title(want.at("journal").get<std::string>()));
        CHECK(got->first_author == want.at("first_author").get<std::string>());
        CHECK(normalize_volume(got->volume) == normalize_volume(want.at("volume").get<std::string>()));
        CHECK(normalize_page(got->page) == normalize_page(want.at("page").get<std::string>()));
        CHECK(got->year == want.at("year").get<int>());
    }
}

TEST_CASE("resolution of annotated references against the fixture corpus")
{
    auto run = ct::run_fixture_pipeline();
    CitationLinker linker(run.store);
    for (const auto& a : annotations()) {
        ReferenceString ref{a.at("citing_id"), a.at("index"), a.at("raw")};
        CAPTURE(ref.raw);
        auto outcome = linker.resolve(ref);
        CHECK(to_string(outcome.status) == a.at("status").get<std::string>());
        if (a.at("cited_id").is_null()) {
            CHECK_FALSE(outcome.link);
        } else {
            REQUIRE(outcome.link);
            CHECK(outcome.link->cited_id == a.at("cited_id").get<std::string>());
        }
    }
}

TEST_CASE("identifier beats a tuple that points elsewhere")
{
    auto run = ct::run_fixture_pipeline();
    CitationLinker linker(run.store);
    ReferenceString ref{"hep-lat/9906007", 0,
                        "J. Maldacena, Phys. Rev. Lett. 83 (1999) 2001; see also hep-th/9903100"};
    auto tuple_only = linker.resolve({ref.citing_id, 0, "J. Maldacena, Phys. Rev. Lett. 83 (1999) 2001"});
    REQUIRE(tuple_only.link);
    CHECK(tuple_only.link->cited_id == "hep-th/9902015");
    auto outcome = linker.resolve(ref);
    CHECK(outcome.status == LinkStatus::identifier);
    REQUIRE(outcome.link);
    CHECK(outcome.link->cited_id == "hep-th/9903100");
    CHECK(outcome.link->method == LinkMethod::identifier);
}

TEST_CASE("a tuple matching two articles is ambiguous and links nothing")
{
    CorpusStore store;
    JournalRef shared{"Phys. Rev. B", "61", "1234", 2000};
    store.upsert_article(article("cond-mat/9908044", "Anderson, P.", shared));
    store.upsert_article(article("cond-mat/9909055", "Lee, P.", shared));
    store.upsert_article(article("hep-th/9901001", "Witten, E.", {"Nucl. Phys. B", "550", "101", 1999}));

    std::vector<ReferenceString> refs{
        {"hep-th/9901001", 0, "Phys. Rev. B 61 (2000) 1234"},
        {"hep-th/9901001", 1, "P. Anderson, Phys. Rev. B 61 (2000) 1234"},
    };
    auto build = build_graph(store, refs);
    CHECK(build.stats.ambiguous == 2);
    CHECK(build.stats.edges == 0);
    CHECK(store.link_count() == 0);
}

TEST_CASE("author fallback when the journal title is missing or unknown")
{
    CorpusStore store;
    store.upsert_article(article("hep-th/9901001", "Witten, E.", {"Nucl. Phys. B", "550", "101", 1999}));
    store.upsert_article(article("hep-th/9902015", "Maldacena, J.", {"Adv. Theor. Math. Phys.", "2", "231", 1998}));
    CitationLinker linker(store);
    auto by_title = linker.resolve({"hep-th/9902015", 0, "E. Witten, Nucl. Phys. B 550 (1999) 101"});
    CHECK(by_title.status == LinkStatus::bibliographic);
    CHECK_FALSE(by_title.matched_by_author);
    auto by_author = linker.resolve({"hep-th/9902015", 1, "E. Witten, Nucl.Phys.Bx 550 (1999) 101"});
    CHECK(by_author.status == LinkStatus::bibliographic);
    CHECK(by_author.matched_by_author);
    auto wrong_page = linker.resolve({"hep-th/9902015", 2, "E. Witten, Nucl. Phys. B 550 (1999) 102"});
    CHECK(wrong_page.status == LinkStatus::unresolved);
    auto self = linker.resolve({"hep-th/9901001", 0, "hep-th/9901001"});
    CHECK(self.status == LinkStatus::self);
    CHECK_FALSE(self.link);
}

TEST_CASE("both methods reaching one pair yield one identifier edge")
{
    CorpusStore store;
    store.upsert_article(article("hep-th/9901001", "Witten, E.", {"Nucl. Phys. B", "550", "101", 1999}));
    store.upsert_article(article("hep-th/9902015", "Maldacena, J.", {"Adv. Theor. Math. Phys.", "2", "231", 1998}));
    std::vector<ReferenceString> refs{
        {"hep-th/9902015", 0, "E. Witten, Nucl. Phys. B 550 (1999) 101"},
        {"hep-th/9902015", 1, "hep-th/9901001"},
    };
    auto build = build_graph(store, refs);
    CHECK(build.stats.edges == 1);
    CHECK(build.stats.edges_identifier == 1);
    CHECK(build.stats.edges_bibliographic == 0);
    REQUIRE(store.links().size() == 1);
    CHECK(store.links()[0].method == LinkMethod::identifier);
}

TEST_CASE("reference files are named by the citing id")
{
    ct::TempDir dir;
    std::ofstream(dir.path() / "hep-th_9901001.txt") << "first\n\n  second  \n";
    std::ofstream(dir.path() / "0704.0001") << "only\n";
    std::ofstream(dir.path() / "notes.txt") << "x\n";
    auto refs = read_reference_file(dir.path() / "hep-th_9901001.txt");
    REQUIRE(refs.size() == 2);
    CHECK(refs[0] == ReferenceString{"hep-th/9901001", 0, "first"});
    CHECK(refs[1].index == 1);
    CHECK(read_reference_file(dir.path() / "0704.0001").at(0).citing_id == "0704.0001");
    CHECK_THROWS(read_reference_file(dir.path() / "notes.txt"));
}
