#pragma once

#include "citecorr/types.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace citecorr {

class UnknownArticle : public std::out_of_range {
public:
    explicit UnknownArticle(const std::string& id)
        : std::out_of_range("unknown article: " + id), id_(id)
    {
    }
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

class InvalidRecord : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class UpsertResult { inserted, updated };

struct ArticleCounts {
    std::string id;
    std::int64_t downloads = 0;
    std::int64_t citations = 0;

    friend bool operator==(const ArticleCounts&, const ArticleCounts&) = default;
};

struct StoreStats {
    std::size_t articles = 0;
    std::size_t events = 0;
    std::size_t events_unknown_article = 0; ///< stored, but invisible to counts_for
    std::size_t links = 0;
    std::size_t links_self_skipped = 0;
    std::size_t references = 0;
};

/// Deduplicating store of articles, download events, reference strings and
/// citation links.
///
/// All mutation goes through upsert_article / record_*; everything else is
/// const. One writer at a time; any number of concurrent readers may query a
/// store that is no longer being written.
class CorpusStore {
public:
    /// Inserts or merges a record. On update the earliest first-deposit date
    /// wins, other metadata is replaced by the new record (an absent
    /// journal reference does not erase a stored one).
    /// Throws InvalidRecord for an unnormalized id or empty subfield.
    UpsertResult upsert_article(ArticleRecord record);

    /// Union on (article_id, day, host_domain). Returns the number of keys
    /// not previously present. Events for unknown articles are kept.
    std::size_t record_downloads(std::span<const DownloadEvent> events);
    /// As record_downloads, returning every event that changed the stored
    /// state: new keys, and existing keys whose kept format got smaller.
    std::vector<DownloadEvent> insert_downloads(std::span<const DownloadEvent> events);

    /// Union on (citing_id, cited_id). Self links are skipped and counted.
    /// Input latency is ignored; it is always recomputed from the articles.
    std::size_t record_links(std::span<const CitationLink> links);
    /// Returns every link whose stored state changed: new edges, and edges
    /// upgraded from bibliographic to identifier.
    std::vector<CitationLink> insert_links(std::span<const CitationLink> links);

    std::size_t record_references(std::span<const ReferenceString> refs);
    std::vector<ReferenceString> insert_references(std::span<const ReferenceString> refs);

    const ArticleRecord* find_article(std::string_view id) const;
    /// Throws UnknownArticle.
    const ArticleRecord& article(std::string_view id) const;
    const std::map<std::string, ArticleRecord, std::less<>>& articles() const { return articles_; }

    /// Downloads whose latency (day - first deposit) lies in the window and
    /// inlinks whose latency lies in the citation window. An absent window
    /// is unbounded. Throws UnknownArticle.
    ArticleCounts counts_for(std::string_view id, const std::optional<DayWindow>& download_window = std::nullopt,
                             const std::optional<DayWindow>& citation_window = std::nullopt) const;

    /// Inlink count. Throws UnknownArticle.
    std::size_t citation_impact(std::string_view id) const;

    /// first_deposit(citing) - first_deposit(cited) when both are known.
    std::optional<std::int64_t> latency(std::string_view citing, std::string_view cited) const;

    /// Stored links in (citing, cited) order with latency filled in.
    std::vector<CitationLink> links() const;
    /// Citing ids of every stored link into `cited`, ascending.
    const std::set<std::string, std::less<>>& inlinks(std::string_view cited) const;
    /// Download days for one article id (known or not), ascending.
    std::vector<Date> download_days(std::string_view id) const;
    /// All stored events, ordered by (article, day, host).
    std::vector<DownloadEvent> events() const;
    std::vector<ReferenceString> references() const;

    StoreStats stats() const;
    std::size_t event_count() const { return event_count_; }
    std::size_t link_count() const { return links_.size(); }

    /// Every article id that appears in the event log, with its event count.
    std::map<std::string, std::size_t> events_per_article() const;

private:
    struct EventKey {
        Date day;
        std::string host_domain;
        friend auto operator<=>(const EventKey&, const EventKey&) = default;
    };
    using EventMap = std::map<EventKey, DownloadFormat>;

    std::map<std::string, ArticleRecord, std::less<>> articles_;
    std::map<std::string, EventMap, std::less<>> events_;
    std::size_t event_count_ = 0;
    std::map<std::pair<std::string, std::string>, LinkMethod> links_;
    std::map<std::string, std::set<std::string, std::less<>>, std::less<>> inlinks_;
    std::size_t self_links_skipped_ = 0;
    std::map<std::pair<std::string, int>, std::string> references_;
};

} // namespace citecorr
