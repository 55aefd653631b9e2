#include "citecorr/log_ingest.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>

using namespace citecorr;

namespace {

std::string line(const std::string& host, const std::string& when, const std::string& request, int status,
                 const std::string& agent = "Mozilla/4.0")
{
    return host + " - - [" + when + "] \"" + request + "\" " + std::to_string(status) + " 1234 \"-\" \"" + agent
           + "\"";
}

} // namespace

TEST_CASE("combined log lines parse")
{
    auto r = parse_log_line(line("pc1.cern.ch", "05/Jan/1999:23:30:00 -0500", "GET /pdf/hep-th/9901001v2 HTTP/1.0",
                                 200));
    REQUIRE(r);
    CHECK(r->host == "pc1.cern.ch");
    CHECK(r->method == "GET");
    CHECK(r->path == "/pdf/hep-th/9901001v2");
    CHECK(r->status == 200);
    CHECK(r->utc_offset_minutes == -300);
    // 23:30 at -0500 is 04:30 the next day in UTC.
    CHECK(r->utc_day() == Date::from_ymd(1999, 1, 6));
    CHECK(r->user_agent == "Mozilla/4.0");
}

TEST_CASE("query strings are removed from the path")
{
    auto r = parse_log_line(line("a.b.org", "01/Feb/1999:00:00:00 +0000", "GET /pdf/hep-th/9901001?x=1 HTTP/1.1", 200));
    REQUIRE(r);
    CHECK(r->path == "/pdf/hep-th/9901001");
}

TEST_CASE("lines outside the grammar are rejected")
{
    for (std::string bad : {std::string(), std::string("garbage"),
                            line("h", "32/Jan/1999:00:00:00 +0000", "GET / HTTP/1.0", 200),
                            line("h", "01/Foo/1999:00:00:00 +0000", "GET / HTTP/1.0", 200),
                            line("h", "01/Jan/1999:25:00:00 +0000", "GET / HTTP/1.0", 200),
                            std::string("h - - [01/Jan/1999:00:00:00 +0000] \"GET / HTTP/1.0\" abc 12 \"-\" \"-\""),
                            std::string("h - - [01/Jan/1999:00:00:00 +0000 \"GET / HTTP/1.0\" 200 12 \"-\" \"-\"")}) {
        CAPTURE(bad);
        CHECK_FALSE(parse_log_line(bad));
    }
}

TEST_CASE("host domains keep the last two labels")
{
    CHECK(host_to_domain("phys.soton.ac.uk") == "ac.uk");
    CHECK(host_to_domain("PC1.CERN.CH") == "cern.ch");
    CHECK(host_to_domain("cern.ch") == "cern.ch");
    CHECK(host_to_domain("localhost") == "localhost");
    CHECK(host_to_domain("192.168.1.20") == "192.168.1.20");
    CHECK(host_to_domain("2001:db8::1") == "2001:db8::1");
}

TEST_CASE("full-text paths are classified by prefix")
{
    auto paths = PathConfig::defaults();
    auto pdf = classify_path("/pdf/hep-th/9901001v2", paths);
    REQUIRE(pdf.kind == PathClass::fulltext);
    CHECK(*pdf.request == FullTextRequest{"hep-th/9901001", DownloadFormat::pdf});
    CHECK(classify_path("/ps/0704.0001.ps.gz", paths).request->format == DownloadFormat::ps);
    CHECK(classify_path("/e-print/0704.0001", paths).request->format == DownloadFormat::source);
    CHECK(classify_path("/abs/hep-th/9901001", paths).kind == PathClass::not_fulltext);
    CHECK(classify_path("/pdf/", paths).kind == PathClass::not_fulltext);
    CHECK(classify_path("/pdf/hep-th/99129", paths).kind == PathClass::bad_identifier);
}

TEST_CASE("robots match by agent or host, case-insensitively")
{
    auto cfg = RobotConfig::defaults();
    ParsedRequest r;
    r.host = "pc.cern.ch";
    r.user_agent = "Mozilla/5.0 (compatible; Googlebot/2.1)";
    CHECK(is_robot(r, cfg));
    r.user_agent = "Mozilla/4.0";
    CHECK_FALSE(is_robot(r, cfg));
    r.host = "crawl-66.googlebot.com";
    CHECK(is_robot(r, cfg));
}

TEST_CASE("the shipped robot and path lists equal the built-in defaults")
{
    auto dir = citecorr::testing::source_dir() / "config";
    auto robots = RobotConfig::load(dir / "robots.conf");
    CHECK(robots.agent_patterns == RobotConfig::defaults().agent_patterns);
    CHECK(robots.host_patterns == RobotConfig::defaults().host_patterns);
    auto paths = PathConfig::load(dir / "paths.conf");
    REQUIRE(paths.patterns.size() == PathConfig::defaults().patterns.size());
    for (std::size_t i = 0; i < paths.patterns.size(); ++i) {
        CHECK(paths.patterns[i].prefix == PathConfig::defaults().patterns[i].prefix);
        CHECK(paths.patterns[i].format == PathConfig::defaults().patterns[i].format);
    }
}

TEST_CASE("config files: comments and host prefix")
{
    std::istringstream in("# list\nFooBot  # trailing\n\nhost: Example.COM\n");
    auto cfg = RobotConfig::parse(in);
    CHECK(cfg.agent_patterns == std::vector<std::string>{"foobot"});
    CHECK(cfg.host_patterns == std::vector<std::string>{"example.com"});
    std::istringstream bad("/pdf/ pdfx\n");
    CHECK_THROWS(PathConfig::parse(bad));
}

TEST_CASE("pipeline stages count every line once")
{
    const std::string when = "10/Mar/1999:12:00:00 +0000";
    std::vector<std::string> lines{
        line("a.cern.ch", when, "GET /pdf/hep-th/9901001 HTTP/1.0", 200),
        line("b.cern.ch", when, "GET /ps/hep-th/9901001 HTTP/1.0", 200),     // same domain and day
        line("a.slac.org", when, "GET /pdf/hep-th/9901001 HTTP/1.0", 200),
        line("a.cern.ch", when, "GET /pdf/hep-th/9901001 HTTP/1.0", 404),
        line("a.cern.ch", when, "HEAD /pdf/hep-th/9901001 HTTP/1.0", 200),
        line("a.cern.ch", when, "GET /abs/hep-th/9901001 HTTP/1.0", 200),
        line("a.cern.ch", when, "GET /pdf/hep-th/99x HTTP/1.0", 200),
        line("a.cern.ch", when, "GET /pdf/hep-th/9901001 HTTP/1.0", 404, "Googlebot/2.1"),
        "not a log line",
    };
    auto result = ingest_lines(lines);
    const auto& s = result.stats;
    CHECK(s.lines_total == 9);
    CHECK(s.events_emitted == 2);
    CHECK(s.events_deduped == 1);
    CHECK(s.status_rejected == 1);
    CHECK(s.non_fulltext == 2);
    CHECK(s.other_skips == 1);
    CHECK(s.robot_hits == 1); // robots are checked before status
    CHECK(s.lines_malformed == 1);
    CHECK(s.balanced());
    REQUIRE(result.events.size() == 2);
    CHECK(result.events[0] == DownloadEvent{"hep-th/9901001", Date::from_ymd(1999, 3, 10), "cern.ch",
                                            DownloadFormat::pdf});
}

TEST_CASE("dedup keeps the smallest format whatever the order")
{
    const std::string when = "10/Mar/1999:12:00:00 +0000";
    std::vector<std::string> lines{
        line("a.cern.ch", when, "GET /e-print/hep-th/9901001 HTTP/1.0", 200),
        line("b.cern.ch", when, "GET /ps/hep-th/9901001 HTTP/1.0", 200),
    };
    CHECK(ingest_lines(lines).events.at(0).format == DownloadFormat::ps);
    std::swap(lines[0], lines[1]);
    CHECK(ingest_lines(lines).events.at(0).format == DownloadFormat::ps);
}

TEST_CASE("gzip logs read like plain ones")
{
    citecorr::testing::TempDir dir;
    auto plain = citecorr::testing::fixture_dir() / "logs" / "access.log";
    std::string cmd = "gzip -c '" + plain.string() + "' > '" + (dir.path() / "access.log.gz").string() + "'";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::vector<std::string> a, b;
    read_log_file(plain, [&](std::string_view l) { a.emplace_back(l); });
    read_log_file(dir.path() / "access.log.gz", [&](std::string_view l) { b.emplace_back(l); });
    CHECK(a.size() == 200);
    CHECK(a == b);
    CHECK_THROWS(read_log_file(dir.path() / "missing.log", [](std::string_view) {}));
}
