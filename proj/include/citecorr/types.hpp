#pragma once

#include "citecorr/date.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace citecorr {

struct JournalRef {
    std::string journal;
    std::string volume;
    std::string page;
    int year = 0;

    friend bool operator==(const JournalRef&, const JournalRef&) = default;
};

/// One deposited article.
struct ArticleRecord {
    std::string id;           ///< normalized, version suffix stripped
    Date first_deposit;       ///< earliest known deposit; never moves later
    std::string subfield;     ///< sub-archive tag, e.g. "hep-th"
    std::string title;
    std::vector<std::string> authors;
    std::optional<JournalRef> journal_ref;
    /// Journal reference text as supplied, kept for display even when it
    /// could not be parsed into the four linking components.
    std::string journal_ref_text;

    friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

enum class DownloadFormat { pdf, ps, source };

std::string_view to_string(DownloadFormat f);
std::optional<DownloadFormat> parse_download_format(std::string_view s);

/// One deduplicated full-text download.
struct DownloadEvent {
    std::string article_id;
    Date day;
    std::string host_domain;
    DownloadFormat format = DownloadFormat::pdf;

    friend bool operator==(const DownloadEvent&, const DownloadEvent&) = default;
};

enum class LinkMethod { identifier, bibliographic };

std::string_view to_string(LinkMethod m);
std::optional<LinkMethod> parse_link_method(std::string_view s);

/// Directed citing -> cited edge. Latency is derived from the stored
/// first-deposit dates and is absent while either article is unknown.
struct CitationLink {
    std::string citing_id;
    std::string cited_id;
    LinkMethod method = LinkMethod::identifier;
    std::optional<std::int64_t> latency_days;

    friend bool operator==(const CitationLink&, const CitationLink&) = default;
};

struct ReferenceString {
    std::string citing_id;
    int index = 0; ///< ordinal within the citing article's reference list
    std::string raw;

    friend bool operator==(const ReferenceString&, const ReferenceString&) = default;
};

/// Closed interval of latencies in days.
struct DayWindow {
    std::int64_t min_days = std::numeric_limits<std::int64_t>::min();
    std::int64_t max_days = std::numeric_limits<std::int64_t>::max();

    bool contains(std::int64_t d) const { return d >= min_days && d <= max_days; }
    friend bool operator==(const DayWindow&, const DayWindow&) = default;
};

} // namespace citecorr
