#include "citecorr/service.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <sstream>

using namespace citecorr;
namespace ct = citecorr::testing;

namespace {

/// First value of every key in a line document.
std::map<std::string, std::string> fields(const std::string& doc)
{
    std::map<std::string, std::string> out;
    std::istringstream in(doc);
    std::string line;
    while (std::getline(in, line)) {
        auto space = line.find(' ');
        out.try_emplace(line.substr(0, space), space == std::string::npos ? "" : line.substr(space + 1));
    }
    return out;
}

std::vector<std::string> values_of(const std::string& doc, const std::string& key)
{
    std::vector<std::string> out;
    std::istringstream in(doc);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + " ", 0) == 0)
            out.push_back(line.substr(key.size() + 1));
    return out;
}

const CorpusStore& fixture_store()
{
    static const ct::FixtureRun run = ct::run_fixture_pipeline();
    return run.store;
}

} // namespace

TEST_CASE("parameter parsing")
{
    auto q = query_from_params({{"field", "hep"}, {"date_from", "19990000"}, {"hits_latency_max", "90"},
                                {"quartile", "top"}, {"min_hits", " "}});
    CHECK(q.field == "hep");
    CHECK(q.date_from == 19990000);
    REQUIRE(q.hits_latency);
    CHECK(q.hits_latency->max_days == 90);
    CHECK(q.hits_latency->min_days == std::numeric_limits<std::int64_t>::min());
    CHECK_FALSE(q.cites_latency);
    CHECK(q.quartile == Quartile::top);
    CHECK(q.min_hits == 0);

    CHECK_THROWS_AS(query_from_params({{"colour", "red"}}), QueryError);
    CHECK_THROWS_AS(query_from_params({{"date_from", "1999-01-01"}}), QueryError);
    CHECK_THROWS_AS(query_from_params({{"min_hits", "ten"}}), QueryError);
    CHECK_THROWS_AS(query_from_params({{"quartile", "middle"}}), QueryError);
    CHECK_THROWS_AS(query_from_params({{"min_impact", "5"}, {"max_impact", "2"}}), QueryError);
}

TEST_CASE("correlate document on the fixture")
{
    QueryService service(fixture_store());
    auto res = service.correlate({});
    REQUIRE(res.status == 200);
    const auto& want = ct::expected().at("correlate_all");
    auto f = fields(res.body);
    CHECK(res.body.rfind("citecorr-result 1\n", 0) == 0);
    CHECK(f.at("n") == std::to_string(want.at("n").get<int>()));
    CHECK(std::stod(f.at("r")) == doctest::Approx(want.at("r").get<double>()).epsilon(1e-9));
    CHECK(std::stod(f.at("downloads.sum")) == want.at("downloads").at("sum").get<double>());
    CHECK(std::stod(f.at("ratio")) == doctest::Approx(want.at("ratio").get<double>()).epsilon(1e-12));
    CHECK(f.at("query.hits_latency") == "-");
    CHECK(values_of(res.body, "cell").size() == want.at("grid").size());
    CHECK(res.body == ct::golden("fixture_correlate.txt", res.body));
}

TEST_CASE("degenerate selections are documents, not errors")
{
    QueryService service(fixture_store());
    auto res = service.correlate({{"field", "math"}});
    CHECK(res.status == 200);
    auto f = fields(res.body);
    CHECK(f.at("n") == "1");
    CHECK(f.at("status") == "insufficient");
    CHECK(f.at("degenerate") == "true");
    CHECK(f.at("r") == "undefined");
    CHECK(f.at("ratio") == "undefined");
}

TEST_CASE("bad queries produce a 400 error document")
{
    QueryService service(fixture_store());
    for (const ParamMap& p : {ParamMap{{"date_from", "yesterday"}}, ParamMap{{"bogus", "1"}}}) {
        auto res = service.correlate(p);
        CHECK(res.status == 400);
        auto f = fields(res.body);
        CHECK(res.body.rfind("citecorr-error 1\n", 0) == 0);
        CHECK(f.at("code") == "bad_query");
        CHECK_FALSE(f.at("message").empty());
    }
    CHECK(service.sweep({{"caps", "30,x"}}).status == 400);
    CHECK(service.sweep({{"caps", "3"}}).status == 400);
    CHECK(service.distribution({{"kind", "nope"}}).status == 400);
    CHECK(service.distribution({{"kind", "cite-latency"}, {"bucket", "weeks"}}).status == 400);
    CHECK(service.distribution({{"kind", "age-profile"}, {"window", "1999"}}).status == 400);
}

TEST_CASE("sweep CSV")
{
    QueryService service(fixture_store());
    auto res = service.sweep({{"caps", "30,60,90"}});
    REQUIRE(res.status == 200);
    CHECK(res.content_type.rfind("text/csv", 0) == 0);
    std::istringstream in(res.body);
    std::string line;
    std::getline(in, line);
    CHECK(line == "max_latency_days,mean_downloads,r");
    for (const auto& row : ct::expected().at("sweep")) {
        REQUIRE(std::getline(in, line));
        auto c1 = line.find(','), c2 = line.rfind(',');
        CHECK(std::stoll(line.substr(0, c1)) == row.at("cap").get<std::int64_t>());
        CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1))
              == doctest::Approx(row.at("mean_downloads").get<double>()).epsilon(1e-12));
        CHECK(std::stod(line.substr(c2 + 1)) == doctest::Approx(row.at("r").get<double>()).epsilon(1e-9));
    }
    CHECK_FALSE(std::getline(in, line));
    auto defaults = service.sweep({});
    CHECK(std::count(defaults.body.begin(), defaults.body.end(), '\n') == 10);
}

TEST_CASE("distribution documents on the fixture")
{
    QueryService service(fixture_store());
    for (auto kind : QueryService::distribution_kinds()) {
        CAPTURE(kind);
        auto res = service.distribution({{"kind", std::string(kind)}});
        CHECK(res.status == 200);
        CHECK(res.body.rfind("citecorr-histogram 1\n", 0) == 0);
    }

    auto cite_freq = service.distribution({{"kind", "cite-freq"}}).body;
    std::vector<std::string> want;
    for (const auto& [k, v] : ct::expected().at("cite_freq").items())
        want.push_back(k + " " + std::to_string(v.get<int>()));
    std::sort(want.begin(), want.end(), [](const std::string& a, const std::string& b) {
        return std::stoll(a) < std::stoll(b);
    });
    CHECK(values_of(cite_freq, "bucket") == want);

    auto deposits = service.distribution({{"kind", "deposits"}}).body;
    CHECK(values_of(deposits, "bucket").size() == ct::expected().at("deposits_per_month").size());

    const auto& age = ct::expected().at("age_profile");
    auto profile = service.distribution(
        {{"kind", "age-profile"}, {"window", age.at("window").get<std::string>()}, {"sample_size", "300"}});
    auto bars = values_of(profile.body, "bar");
    REQUIRE(bars.size() == age.at("bars").size());
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& b = age.at("bars")[i];
        std::istringstream row(bars[i]);
        std::string month;
        std::int64_t articles, sampled, downloads, citations;
        row >> month >> articles >> sampled >> downloads >> citations;
        CHECK(month == b.at("month").get<std::string>());
        CHECK(articles == b.at("articles").get<std::int64_t>());
        CHECK(sampled == articles); // every month is smaller than the sample
        CHECK(downloads == b.at("downloads").get<std::int64_t>());
        CHECK(citations == b.at("citations").get<std::int64_t>());
    }
}

TEST_CASE("meta document")
{
    QueryService service(fixture_store());
    auto f = fields(service.meta().body);
    CHECK(f.at("articles") == "12");
    CHECK(f.at("events_unknown_article") == std::to_string(ct::expected().at("events_for_unknown_articles").get<int>()));
    CHECK(f.at("links") == std::to_string(ct::expected().at("edge_counts").at("total").get<int>()));
}

TEST_CASE("error messages stay on one line")
{
    auto doc = format_error({ApiErrorCode::io, "disk\nfull"});
    CHECK(doc == "citecorr-error 1\ncode io\nmessage disk full\n");
    CHECK(http_status(ApiErrorCode::not_found) == 404);
}

TEST_CASE("an empty corpus gives empty histograms")
{
    const CorpusStore empty;
    QueryService service(empty);
    for (auto kind : QueryService::distribution_kinds()) {
        CAPTURE(kind);
        auto res = service.distribution({{"kind", std::string(kind)}});
        CHECK(res.status == 200);
        CHECK(values_of(res.body, "bucket").empty());
        CHECK(values_of(res.body, "bar").empty());
    }
}

TEST_CASE("frequency buckets add up to the correlate selection")
{
    QueryService service(fixture_store());
    const std::vector<ParamMap> queries{
        {}, {{"field", "hep"}}, {{"quartile", "top"}}, {{"min_hits", "5"}}, {{"field", "math"}}};
    for (const auto& base : queries) {
        auto n = std::stoll(fields(service.correlate(base).body).at("n"));
        for (const char* kind : {"cite-freq", "download-freq"}) {
            ParamMap p = base;
            p["kind"] = kind;
            long long total = 0;
            for (const auto& b : values_of(service.distribution(p).body, "bucket"))
                total += std::stoll(b.substr(b.find(' ') + 1));
            CAPTURE(kind);
            CHECK(total == n);
        }
    }
}
