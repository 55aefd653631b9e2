#pragma once

#include "citecorr/types.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace citecorr {

/// One access-log line in Apache "combined" format:
///   host ident user [dd/Mon/yyyy:HH:MM:SS +zzzz] "request" status bytes "referer" "user-agent"
struct ParsedRequest {
    std::string host;
    std::int64_t utc_seconds = 0; ///< Unix time of the request
    int utc_offset_minutes = 0;   ///< zone offset as written in the log
    std::string method;
    std::string path;             ///< URL path, query string removed
    std::string protocol;
    int status = 0;
    std::string referer;
    std::string user_agent;

    Date utc_day() const;
};

/// Never throws; returns nullopt for anything outside the grammar.
std::optional<ParsedRequest> parse_log_line(std::string_view line);

/// Case-insensitive substring patterns. Config file syntax: one pattern per
/// line, `#` starts a comment, `host:` prefix makes a host pattern,
/// anything else matches the user-agent.
struct RobotConfig {
    std::vector<std::string> agent_patterns;
    std::vector<std::string> host_patterns;

    static RobotConfig defaults();
    static RobotConfig parse(std::istream& in);
    static RobotConfig load(const std::filesystem::path& file);
};

bool is_robot(const ParsedRequest& request, const RobotConfig& config);

struct PathPattern {
    std::string prefix; ///< e.g. "/pdf/"
    DownloadFormat format;
};

/// Config file syntax: `<prefix> <pdf|ps|source>` per line, `#` comments.
struct PathConfig {
    std::vector<PathPattern> patterns;

    static PathConfig defaults();
    static PathConfig parse(std::istream& in);
    static PathConfig load(const std::filesystem::path& file);
};

struct FullTextRequest {
    std::string article_id;
    DownloadFormat format;
    friend bool operator==(const FullTextRequest&, const FullTextRequest&) = default;
};

enum class PathClass { fulltext, not_fulltext, bad_identifier };

struct PathClassification {
    PathClass kind = PathClass::not_fulltext;
    std::optional<FullTextRequest> request;
};

/// Distinguishes "not a full-text URL" from "full-text URL with an
/// identifier that does not normalize".
PathClassification classify_path(std::string_view path, const PathConfig& config);
std::optional<FullTextRequest> classify_fulltext(std::string_view path, const PathConfig& config);

/// Last two labels of a hostname (`phys.soton.ac.uk` -> `ac.uk`). IP
/// literals and single-label names are returned whole.
std::string host_to_domain(std::string_view host);

struct IngestStats {
    std::uint64_t lines_total = 0;
    std::uint64_t lines_malformed = 0;
    std::uint64_t robot_hits = 0;
    std::uint64_t non_fulltext = 0;
    std::uint64_t status_rejected = 0;
    std::uint64_t events_emitted = 0;
    std::uint64_t events_deduped = 0;
    std::uint64_t other_skips = 0; ///< full-text paths whose identifier did not normalize

    bool balanced() const
    {
        return lines_total == lines_malformed + robot_hits + non_fulltext + status_rejected + events_emitted
                                  + events_deduped + other_skips;
    }
    IngestStats& operator+=(const IngestStats& o);
    friend bool operator==(const IngestStats&, const IngestStats&) = default;
};

struct IngestConfig {
    RobotConfig robots = RobotConfig::defaults();
    PathConfig paths = PathConfig::defaults();
};

struct IngestResult {
    std::vector<DownloadEvent> events;
    IngestStats stats;
};

/// Streaming form of the pipeline
///   parse -> drop malformed -> drop robots -> keep status 200 -> classify
///   -> normalize id -> reduce host -> dedup on (article, UTC day, domain).
class LogIngestor {
public:
    explicit LogIngestor(IngestConfig config = {});

    void feed(std::string_view line);
    const IngestStats& stats() const { return stats_; }
    /// Events in emission order; resets the dedup state.
    IngestResult finish();

private:
    IngestConfig config_;
    IngestStats stats_;
    std::vector<DownloadEvent> events_;
    std::map<std::tuple<std::string, Date, std::string>, std::size_t> seen_; ///< key -> index in events_
};

IngestResult ingest_log(std::istream& lines, const IngestConfig& config = {});
IngestResult ingest_lines(std::span<const std::string> lines, const IngestConfig& config = {});

/// Calls `sink` for every line of a plain or gzip-compressed log file.
/// Throws std::runtime_error when the file cannot be read.
void read_log_file(const std::filesystem::path& file, const std::function<void(std::string_view)>& sink);

} // namespace citecorr
