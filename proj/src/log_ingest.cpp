#include "citecorr/log_ingest.hpp"

#include "citecorr/arxiv_id.hpp"
#include "text_util.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <memory>
#include <stdexcept>

namespace citecorr {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[pos_]; }

    bool consume(char c)
    {
        if (peek() != c || done())
            return false;
        ++pos_;
        return true;
    }

    // At least one space.
    bool spaces()
    {
        std::size_t start = pos_;
        while (!done() && (s_[pos_] == ' ' || s_[pos_] == '\t'))
            ++pos_;
        return pos_ > start;
    }

    std::string_view token()
    {
        std::size_t start = pos_;
        while (!done() && s_[pos_] != ' ' && s_[pos_] != '\t')
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    std::optional<std::string_view> until(char c)
    {
        auto end = s_.find(c, pos_);
        if (end == std::string_view::npos)
            return std::nullopt;
        auto out = s_.substr(pos_, end - pos_);
        pos_ = end + 1;
        return out;
    }

    // "..." with backslash escapes; returns the unescaped contents.
    std::optional<std::string> quoted()
    {
        if (!consume('"'))
            return std::nullopt;
        std::string out;
        while (!done()) {
            char c = s_[pos_++];
            if (c == '"')
                return out;
            if (c == '\\' && !done()) {
                char n = s_[pos_];
                if (n == '"' || n == '\\') {
                    out.push_back(n);
                    ++pos_;
                    continue;
                }
            }
            out.push_back(c);
        }
        return std::nullopt;
    }

    std::string_view rest() const { return done() ? std::string_view{} : s_.substr(pos_); }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

int two_digits(std::string_view s, std::size_t at)
{
    return (s[at] - '0') * 10 + (s[at + 1] - '0');
}

// dd/Mon/yyyy:HH:MM:SS +zzzz
bool parse_timestamp(std::string_view t, std::int64_t& utc_seconds, int& offset_minutes)
{
    static constexpr std::array<std::string_view, 12> months{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                             "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    if (t.size() != 26)
        return false;
    for (std::size_t i : {0u, 1u, 7u, 8u, 9u, 10u, 12u, 13u, 15u, 16u, 18u, 19u, 22u, 23u, 24u, 25u})
        if (!is_digit(t[i]))
            return false;
    if (t[2] != '/' || t[6] != '/' || t[11] != ':' || t[14] != ':' || t[17] != ':' || t[20] != ' '
        || (t[21] != '+' && t[21] != '-'))
        return false;
    unsigned month = 0;
    for (unsigned m = 0; m < months.size(); ++m)
        if (t.substr(3, 3) == months[m])
            month = m + 1;
    if (month == 0)
        return false;
    int day = two_digits(t, 0);
    int year = two_digits(t, 7) * 100 + two_digits(t, 9);
    int hh = two_digits(t, 12), mm = two_digits(t, 15), ss = two_digits(t, 18);
    int zh = two_digits(t, 22), zm = two_digits(t, 24);
    if (hh > 23 || mm > 59 || ss > 60 || zh > 14 || zm > 59)
        return false;
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                    std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok())
        return false;
    offset_minutes = (t[21] == '-' ? -1 : 1) * (zh * 60 + zm);
    std::int64_t days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    utc_seconds = days * 86400 + hh * 3600 + mm * 60 + ss - offset_minutes * 60;
    return true;
}

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string percent_decode(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size()) {
            int hi = hex_value(s[i + 1]), lo = hex_value(s[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out.push_back(static_cast<char>(hi * 16 + lo));
                i += 2;
                continue;
            }
        }
        out.push_back(s[i]);
    }
    return out;
}

// Request target -> URL path: absolute URLs lose scheme and authority,
// query strings and fragments are dropped.
std::optional<std::string> target_path(std::string_view target)
{
    if (text::istarts_with(target, "http://") || text::istarts_with(target, "https://")) {
        auto authority = target.find("//") + 2;
        auto slash = target.find('/', authority);
        target = slash == std::string_view::npos ? std::string_view("/") : target.substr(slash);
    }
    if (target.empty() || target.front() != '/')
        return std::nullopt;
    auto cut = target.find_first_of("?#");
    return percent_decode(target.substr(0, cut));
}

bool is_ipv4(std::string_view host)
{
    auto parts = text::split(host, '.');
    if (parts.size() != 4)
        return false;
    for (auto p : parts) {
        if (p.empty() || p.size() > 3)
            return false;
        int v = 0;
        for (char c : p) {
            if (!is_digit(c))
                return false;
            v = v * 10 + (c - '0');
        }
        if (v > 255)
            return false;
    }
    return true;
}

template <typename Config, typename LineFn>
Config parse_config_lines(std::istream& in, LineFn on_line)
{
    Config config;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        std::string_view body = text::trim(std::string_view(line).substr(0, hash));
        if (!body.empty())
            on_line(config, body);
    }
    return config;
}

std::ifstream open_config(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot read config file " + file.string());
    return in;
}

} // namespace

Date ParsedRequest::utc_day() const
{
    std::int64_t days = utc_seconds / 86400;
    if (utc_seconds % 86400 < 0)
        --days;
    return Date::from_days_since_epoch(days);
}

std::optional<ParsedRequest> parse_log_line(std::string_view line)
{
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
        line.remove_suffix(1);

    Cursor c(line);
    ParsedRequest r;

    auto host = c.token();
    if (host.empty() || !c.spaces())
        return std::nullopt;
    r.host = std::string(host);
    if (c.token().empty() || !c.spaces()) // identity
        return std::nullopt;
    if (c.token().empty() || !c.spaces()) // user
        return std::nullopt;

    if (!c.consume('['))
        return std::nullopt;
    auto stamp = c.until(']');
    if (!stamp || !parse_timestamp(*stamp, r.utc_seconds, r.utc_offset_minutes) || !c.spaces())
        return std::nullopt;

    auto request = c.quoted();
    if (!request || !c.spaces())
        return std::nullopt;
    {
        auto parts = text::split(text::trim(*request), ' ');
        if (parts.size() < 2 || parts.size() > 3 || parts[0].empty())
            return std::nullopt;
        for (char ch : parts[0])
            if (ch < 'A' || ch > 'Z')
                return std::nullopt;
        auto path = target_path(parts[1]);
        if (!path)
            return std::nullopt;
        r.method = std::string(parts[0]);
        r.path = std::move(*path);
        if (parts.size() == 3)
            r.protocol = std::string(parts[2]);
    }

    auto status = c.token();
    if (status.size() != 3 || !is_digit(status[0]) || !is_digit(status[1]) || !is_digit(status[2]))
        return std::nullopt;
    r.status = (status[0] - '0') * 100 + (status[1] - '0') * 10 + (status[2] - '0');
    if (r.status < 100 || r.status > 599 || !c.spaces())
        return std::nullopt;

    auto bytes = c.token();
    if (bytes.empty() || !c.spaces())
        return std::nullopt;
    if (bytes != "-")
        for (char ch : bytes)
            if (!is_digit(ch))
                return std::nullopt;

    auto referer = c.quoted();
    if (!referer || !c.spaces())
        return std::nullopt;
    auto agent = c.quoted();
    if (!agent || !text::trim(c.rest()).empty())
        return std::nullopt;
    r.referer = std::move(*referer);
    r.user_agent = std::move(*agent);
    return r;
}

RobotConfig RobotConfig::defaults()
{
    RobotConfig config;
    config.agent_patterns = {"googlebot", "slurp",       "msnbot",        "bingbot",    "teoma",
                             "ia_archiver", "scooter",   "fast-webcrawler", "gigabot",  "baiduspider",
                             "yandex",    "ask jeeves",  "zyborg",        "turnitinbot", "crawler",
                             "spider",    "robot"};
    config.host_patterns = {"googlebot.com", "crawl.yahoo.net", "inktomisearch.com", "search.msn.com",
                            "crawl.baidu.com"};
    return config;
}

RobotConfig RobotConfig::parse(std::istream& in)
{
    return parse_config_lines<RobotConfig>(in, [](RobotConfig& cfg, std::string_view body) {
        if (text::istarts_with(body, "host:"))
            cfg.host_patterns.push_back(text::to_lower(text::trim(body.substr(5))));
        else
            cfg.agent_patterns.push_back(text::to_lower(body));
    });
}

RobotConfig RobotConfig::load(const std::filesystem::path& file)
{
    auto in = open_config(file);
    return parse(in);
}

bool is_robot(const ParsedRequest& request, const RobotConfig& config)
{
    for (const auto& p : config.agent_patterns)
        if (!p.empty() && text::icontains(request.user_agent, p))
            return true;
    for (const auto& p : config.host_patterns)
        if (!p.empty() && text::icontains(request.host, p))
            return true;
    return false;
}

PathConfig PathConfig::defaults()
{
    return PathConfig{{{"/pdf/", DownloadFormat::pdf}, {"/ps/", DownloadFormat::ps}, {"/e-print/", DownloadFormat::source}}};
}

PathConfig PathConfig::parse(std::istream& in)
{
    return parse_config_lines<PathConfig>(in, [](PathConfig& cfg, std::string_view body) {
        auto space = body.find_first_of(" \t");
        if (space == std::string_view::npos)
            throw std::runtime_error("path pattern needs '<prefix> <format>': " + std::string(body));
        auto format = parse_download_format(text::trim(body.substr(space)));
        if (!format)
            throw std::runtime_error("unknown download format in: " + std::string(body));
        cfg.patterns.push_back({std::string(body.substr(0, space)), *format});
    });
}

PathConfig PathConfig::load(const std::filesystem::path& file)
{
    auto in = open_config(file);
    return parse(in);
}

PathClassification classify_path(std::string_view path, const PathConfig& config)
{
    static constexpr std::array<std::string_view, 5> suffixes{".ps.gz", ".tar.gz", ".pdf", ".ps", ".gz"};
    for (const auto& pattern : config.patterns) {
        if (pattern.prefix.empty() || path.substr(0, pattern.prefix.size()) != pattern.prefix)
            continue;
        std::string_view rest = path.substr(pattern.prefix.size());
        while (!rest.empty() && rest.back() == '/')
            rest.remove_suffix(1);
        if (rest.empty())
            return {PathClass::not_fulltext, std::nullopt};
        for (auto suffix : suffixes) {
            if (rest.size() > suffix.size() && rest.substr(rest.size() - suffix.size()) == suffix) {
                rest.remove_suffix(suffix.size());
                break;
            }
        }
        if (auto id = try_normalize_arxiv_id(rest))
            return {PathClass::fulltext, FullTextRequest{std::move(*id), pattern.format}};
        return {PathClass::bad_identifier, std::nullopt};
    }
    return {PathClass::not_fulltext, std::nullopt};
}

std::optional<FullTextRequest> classify_fulltext(std::string_view path, const PathConfig& config)
{
    return classify_path(path, config).request;
}

std::string host_to_domain(std::string_view host)
{
    std::string h = text::to_lower(text::trim(host));
    while (!h.empty() && h.back() == '.')
        h.pop_back();
    if (h.find(':') != std::string::npos || is_ipv4(h))
        return h;
    auto last = h.rfind('.');
    if (last == std::string::npos || last == 0)
        return h;
    auto second = h.rfind('.', last - 1);
    if (second == std::string::npos)
        return h;
    return h.substr(second + 1);
}

IngestStats& IngestStats::operator+=(const IngestStats& o)
{
    lines_total += o.lines_total;
    lines_malformed += o.lines_malformed;
    robot_hits += o.robot_hits;
    non_fulltext += o.non_fulltext;
    status_rejected += o.status_rejected;
    events_emitted += o.events_emitted;
    events_deduped += o.events_deduped;
    other_skips += o.other_skips;
    return *this;
}

LogIngestor::LogIngestor(IngestConfig config) : config_(std::move(config)) {}

void LogIngestor::feed(std::string_view line)
{
    ++stats_.lines_total;
    auto request = parse_log_line(line);
    if (!request) {
        ++stats_.lines_malformed;
        return;
    }
    if (is_robot(*request, config_.robots)) {
        ++stats_.robot_hits;
        return;
    }
    if (request->status != 200) {
        ++stats_.status_rejected;
        return;
    }
    if (request->method != "GET") {
        ++stats_.non_fulltext;
        return;
    }
    auto cls = classify_path(request->path, config_.paths);
    if (cls.kind == PathClass::not_fulltext) {
        ++stats_.non_fulltext;
        return;
    }
    if (cls.kind == PathClass::bad_identifier) {
        ++stats_.other_skips;
        return;
    }
    DownloadEvent event{cls.request->article_id, request->utc_day(), host_to_domain(request->host),
                        cls.request->format};
    auto [slot, fresh] = seen_.try_emplace({event.article_id, event.day, event.host_domain}, events_.size());
    if (!fresh) {
        // Same rule as the store: the smallest format stands, whatever the
        // line order.
        DownloadFormat& kept = events_[slot->second].format;
        kept = std::min(kept, event.format);
        ++stats_.events_deduped;
        return;
    }
    ++stats_.events_emitted;
    events_.push_back(std::move(event));
}

IngestResult LogIngestor::finish()
{
    IngestResult result{std::move(events_), stats_};
    events_.clear();
    seen_.clear();
    stats_ = {};
    return result;
}

IngestResult ingest_log(std::istream& lines, const IngestConfig& config)
{
    LogIngestor ingestor(config);
    std::string line;
    while (std::getline(lines, line))
        ingestor.feed(line);
    return ingestor.finish();
}

IngestResult ingest_lines(std::span<const std::string> lines, const IngestConfig& config)
{
    LogIngestor ingestor(config);
    for (const auto& line : lines)
        ingestor.feed(line);
    return ingestor.finish();
}

void read_log_file(const std::filesystem::path& file, const std::function<void(std::string_view)>& sink)
{
    // gzread passes uncompressed files through unchanged.
    std::unique_ptr<gzFile_s, decltype(&gzclose)> gz(gzopen(file.c_str(), "rb"), &gzclose);
    if (!gz)
        throw std::runtime_error("cannot open log file " + file.string());
    std::array<char, 1 << 16> buf{};
    std::string pending;
    for (;;) {
        int n = gzread(gz.get(), buf.data(), static_cast<unsigned>(buf.size()));
        if (n < 0) {
            int err = 0;
            throw std::runtime_error("error reading " + file.string() + ": " + gzerror(gz.get(), &err));
        }
        if (n == 0)
            break;
        std::string_view chunk(buf.data(), static_cast<std::size_t>(n));
        std::size_t start = 0;
        for (auto nl = chunk.find('\n'); nl != std::string_view::npos; nl = chunk.find('\n', start)) {
            if (pending.empty()) {
                sink(chunk.substr(start, nl - start));
            } else {
                pending.append(chunk.substr(start, nl - start));
                sink(pending);
                pending.clear();
            }
            start = nl + 1;
        }
        pending.append(chunk.substr(start));
    }
    if (!pending.empty())
        sink(pending);
}

} // namespace citecorr
