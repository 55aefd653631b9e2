#include "citecorr/cli.hpp"

#include "citecorr/citation_linker.hpp"
#include "citecorr/corpus_io.hpp"
#include "citecorr/http_server.hpp"
#include "citecorr/log_ingest.hpp"
#include "citecorr/metadata_harvest.hpp"
#include "citecorr/service.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace citecorr {

namespace {

namespace fs = std::filesystem;

// Flag name to request parameter name; both front ends share the parser.
struct FilterFlag {
    const char* flag;
    const char* param;
    const char* help;
};

constexpr FilterFlag kFilterFlags[] = {
    {"--field", "field", "subfield tags or groups, comma-separated (hep = hep-th,hep-ph,hep-lat,hep-ex)"},
    {"--date-from", "date_from", "first deposit on or after YYYYMMDD"},
    {"--date-until", "date_until", "first deposit on or before YYYYMMDD"},
    {"--min-hits", "min_hits", "minimum downloads"},
    {"--max-hits", "max_hits", "maximum downloads"},
    {"--min-impact", "min_impact", "minimum citations"},
    {"--max-impact", "max_impact", "maximum citations"},
    {"--hits-latency-min", "hits_latency_min", "count downloads at least this many days after deposit"},
    {"--hits-latency-max", "hits_latency_max", "count downloads at most this many days after deposit"},
    {"--cites-latency-min", "cites_latency_min", "count citations at least this many days after deposit"},
    {"--cites-latency-max", "cites_latency_max", "count citations at most this many days after deposit"},
    {"--quartile", "quartile", "all, top, upper, lower or bottom by citations"},
};

struct Filters {
    std::map<std::string, std::string> values;

    void attach(CLI::App* cmd)
    {
        for (const auto& f : kFilterFlags)
            cmd->add_option(f.flag, values[f.param], f.help);
    }

    ParamMap params() const
    {
        ParamMap p;
        for (const auto& [k, v] : values)
            if (!v.empty())
                p[k] = v;
        return p;
    }
};

fs::path resolve_data_dir(const std::string& flag)
{
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("CITECORR_DATA"); env && *env)
        return env;
    return "data";
}

// A rejected query prints the error document, then the usage text.
int emit(const ServiceResponse& r, std::ostream& out, std::ostream& err, const CLI::App* cmd)
{
    if (r.status != 200) {
        err << r.body;
        if (r.status != 400)
            return exit_failure;
        err << '\n' << cmd->help();
        return exit_usage;
    }
    out << r.body;
    return exit_ok;
}

void print_ingest_stats(const IngestStats& s, std::size_t stored, std::ostream& out)
{
    out << "lines_total " << s.lines_total << '\n'
        << "lines_malformed " << s.lines_malformed << '\n'
        << "robot_hits " << s.robot_hits << '\n'
        << "status_rejected " << s.status_rejected << '\n'
        << "non_fulltext " << s.non_fulltext << '\n'
        << "other_skips " << s.other_skips << '\n'
        << "events_deduped " << s.events_deduped << '\n'
        << "events_emitted " << s.events_emitted << '\n'
        << "events_stored " << stored << '\n';
}

int cmd_ingest(const fs::path& data, const std::vector<std::string>& files, const std::string& robots,
               const std::string& paths, std::ostream& out)
{
    IngestConfig config;
    if (!robots.empty())
        config.robots = RobotConfig::load(robots);
    if (!paths.empty())
        config.paths = PathConfig::load(paths);

    LogIngestor ingestor(config);
    for (const auto& f : files)
        read_log_file(f, [&](std::string_view line) { ingestor.feed(line); });
    IngestResult result = ingestor.finish();

    fs::create_directories(data);
    CorpusStore store = load_corpus(data);
    std::size_t before = store.event_count();
    auto changed = store.insert_downloads(result.events);
    append_events(data, changed);
    print_ingest_stats(result.stats, store.event_count() - before, out);
    return exit_ok;
}

int cmd_harvest(const fs::path& data, const std::vector<std::string>& pages, const std::string& endpoint,
                HarvestOptions options, std::ostream& out, std::ostream& err)
{
    fs::create_directories(data);
    CorpusStore store = load_corpus(data);
    std::size_t records = 0, accepted = 0, rejected = 0, deleted = 0;
    // Each page is written out before the next is fetched, so an
    // interrupted harvest keeps its progress and can resume by token.
    auto absorb = [&](HarvestPage& page) {
        std::vector<ArticleRecord> batch;
        for (const auto& r : page.records) {
            ++records;
            if (r.deleted) {
                ++deleted;
                continue;
            }
            try {
                ArticleRecord rec = parse_record(r);
                store.upsert_article(rec);
                batch.push_back(std::move(rec));
            } catch (const RecordRejected& e) {
                ++rejected;
                err << "rejected " << (r.oai_identifier.empty() ? r.origin : r.oai_identifier) << ": "
                    << e.what() << '\n';
            }
        }
        accepted += batch.size();
        append_articles(data, batch);
    };

    HarvestReport report;
    try {
        if (!endpoint.empty()) {
            harvest_endpoint_pages(make_http_fetch(endpoint), options, absorb, &report);
        } else {
            for (const auto& p : pages)
                for (const auto& file : list_page_files(p)) {
                    HarvestPage page = load_page_file(file);
                    absorb(page);
                }
        }
    } catch (const HarvestError& e) {
        err << "harvest failed at " << e.page() << ": " << e.what() << '\n'
            << "kept " << accepted << " records from earlier pages\n";
        if (e.last_token())
            err << "resume with --resume-token " << *e.last_token() << '\n';
        return exit_harvest_interrupted;
    }

    out << "records " << records << '\n'
        << "accepted " << accepted << '\n'
        << "rejected " << rejected << '\n'
        << "deleted " << deleted << '\n'
        << "articles " << store.articles().size() << '\n';
    if (!endpoint.empty())
        out << "requests " << report.requests << '\n' << "retries " << report.retries << '\n';
    return exit_ok;
}

int cmd_link(const fs::path& data, const std::vector<std::string>& sources, std::ostream& out)
{
    std::vector<ReferenceString> refs;
    for (const auto& s : sources) {
        auto part = fs::is_directory(s) ? read_reference_dir(s) : read_reference_file(s);
        refs.insert(refs.end(), part.begin(), part.end());
    }
    fs::create_directories(data);
    CorpusStore store = load_corpus(data);
    auto fresh_refs = store.insert_references(refs);
    // Relink the whole reference set so that articles harvested since the
    // last run can now be matched.
    auto all_refs = store.references();
    GraphBuild build = build_graph(store, all_refs);
    append_references(data, fresh_refs);
    append_links(data, build.changed);

    const LinkStats& s = build.stats;
    out << "references " << s.references << '\n'
        << "identifier " << s.identifier << '\n'
        << "bibliographic " << s.bibliographic << '\n'
        << "by_journal " << s.by_journal << '\n'
        << "by_author " << s.by_author << '\n'
        << "ambiguous " << s.ambiguous << '\n'
        << "unresolved " << s.unresolved << '\n'
        << "self " << s.self << '\n'
        << "edges " << s.edges << '\n'
        << "edges_identifier " << s.edges_identifier << '\n'
        << "edges_bibliographic " << s.edges_bibliographic << '\n'
        << "edges_new " << s.edges_new << '\n';
    return exit_ok;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Download/citation correlation over a preprint corpus", "citecorr"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    std::string data_flag;
    app.add_option("--data", data_flag, "data directory (default $CITECORR_DATA, then ./data)");

    // ingest-logs
    auto* ingest = app.add_subcommand("ingest-logs", "extract download events from access logs")->fallthrough();
    std::vector<std::string> log_files;
    std::string robots_file, paths_file;
    ingest->add_option("logs", log_files, "log files, plain or .gz")->required()->check(CLI::ExistingFile);
    ingest->add_option("--robots", robots_file, "robot pattern file")->check(CLI::ExistingFile);
    ingest->add_option("--paths", paths_file, "full-text path pattern file")->check(CLI::ExistingFile);

    // harvest
    auto* harvest = app.add_subcommand("harvest", "load article metadata from OAI-PMH pages or an endpoint")
                        ->fallthrough();
    std::vector<std::string> page_sources, harvest_sources;
    std::string endpoint, set, from, until, resume;
    harvest->add_option("source", harvest_sources, "OAI-PMH base URL, or saved pages (files or directories)");
    harvest->add_option("--pages", page_sources, "saved ListRecords pages (files or directories)");
    harvest->add_option("--endpoint", endpoint, "OAI-PMH base URL");
    harvest->add_option("--set", set, "setSpec filter");
    harvest->add_option("--from", from, "YYYY-MM-DD");
    harvest->add_option("--until", until, "YYYY-MM-DD");
    harvest->add_option("--resume-token", resume, "continue an interrupted harvest");
    int max_attempts = HarvestOptions{}.max_attempts;
    long backoff_ms = HarvestOptions{}.initial_backoff.count();
    harvest->add_option("--max-attempts", max_attempts, "requests per page before giving up")
        ->check(CLI::PositiveNumber);
    harvest->add_option("--backoff-ms", backoff_ms, "first retry delay, doubled per attempt")
        ->check(CLI::NonNegativeNumber);

    // link
    auto* link = app.add_subcommand("link", "resolve reference strings into citation links")->fallthrough();
    std::vector<std::string> ref_sources;
    link->add_option("references", ref_sources, "reference files or directories")->required()->check(
        CLI::ExistingPath);

    // correlate / sweep / report
    Filters correlate_filters, sweep_filters, report_filters;
    auto* correlate = app.add_subcommand("correlate", "correlate downloads with citations")->fallthrough();
    correlate_filters.attach(correlate);

    auto* sweep = app.add_subcommand("sweep", "correlation across download-latency caps (CSV)")->fallthrough();
    sweep_filters.attach(sweep);
    std::string caps, caps_flag;
    sweep->add_option("cap-list", caps, "comma-separated caps in days");
    sweep->add_option("--caps", caps_flag, "same as the positional caps");

    auto* report = app.add_subcommand("report", "distributions, scatter plot and corpus counts")->fallthrough();
    report_filters.attach(report);
    std::string kind, bucket, sample_size, window, seed;
    std::vector<std::string> kinds{"scatter", "meta"};
    for (auto k : QueryService::distribution_kinds())
        kinds.emplace_back(k);
    report->add_option("kind", kind, "report kind")->required()->check(CLI::IsMember(kinds));
    report->add_option("--bucket", bucket, "latency buckets: days or months");
    report->add_option("--sample-size", sample_size, "articles sampled per month (age-profile)");
    report->add_option("--window", window, "YYYY-MM activity month (age-profile)");
    report->add_option("--seed", seed, "sampling seed (age-profile)");

    // serve
    auto* serve = app.add_subcommand("serve", "HTTP API over the data directory")->fallthrough();
    ServerOptions server_options;
    std::string static_dir;
    serve->add_option("--host", server_options.host, "listen address");
    serve->add_option("--port", server_options.port, "listen port, 0 for any");
    serve->add_option("--static", static_dir, "directory of browser assets")->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    const fs::path data = resolve_data_dir(data_flag);
    try {
        if (*ingest)
            return cmd_ingest(data, log_files, robots_file, paths_file, out);
        if (*harvest) {
            for (const auto& src : harvest_sources) {
                if (src.rfind("http://", 0) == 0 || src.rfind("https://", 0) == 0) {
                    if (!endpoint.empty()) {
                        err << "harvest takes one endpoint\n";
                        return exit_usage;
                    }
                    endpoint = src;
                } else {
                    page_sources.push_back(src);
                }
            }
            if (endpoint.empty() == page_sources.empty()) {
                err << "harvest needs a source: an endpoint URL or saved pages, not both\n";
                return exit_usage;
            }
            HarvestOptions options;
            if (!set.empty()) options.set = set;
            if (!from.empty()) options.from = from;
            if (!until.empty()) options.until = until;
            if (!resume.empty()) options.resume_token = resume;
            options.max_attempts = max_attempts;
            options.initial_backoff = std::chrono::milliseconds(backoff_ms);
            return cmd_harvest(data, page_sources, endpoint, options, out, err);
        }
        if (*link)
            return cmd_link(data, ref_sources, out);

        if (!fs::is_directory(data)) {
            err << "data directory not found: " << data.string() << '\n';
            return exit_failure;
        }
        const CorpusStore store = load_corpus(data);
        const QueryService service(store);
        if (*correlate)
            return emit(service.correlate(correlate_filters.params()), out, err, correlate);
        if (*sweep) {
            ParamMap p = sweep_filters.params();
            if (!caps.empty() && !caps_flag.empty()) {
                err << "give the caps once\n";
                return exit_usage;
            }
            if (!caps.empty() || !caps_flag.empty())
                p["caps"] = caps.empty() ? caps_flag : caps;
            return emit(service.sweep(p), out, err, sweep);
        }
        if (*report) {
            ParamMap p = report_filters.params();
            if (kind == "meta")
                return emit(service.meta(), out, err, report);
            if (kind == "scatter")
                return emit(service.scatter(p), out, err, report);
            p["kind"] = kind;
            for (auto [key, value] : {std::pair{"bucket", &bucket}, std::pair{"sample_size", &sample_size},
                                      std::pair{"window", &window}, std::pair{"seed", &seed}})
                if (!value->empty())
                    p[key] = *value;
            return emit(service.distribution(p), out, err, report);
        }
        if (*serve) {
            server_options.static_dir = static_dir;
            ApiServer server(service, server_options);
            int port = server.bind();
            out << "listening on http://" << server_options.host << ':' << port << std::endl;
            server.listen();
            return exit_ok;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}

} // namespace citecorr
