#include "citecorr/corpus_store.hpp"

#include "citecorr/arxiv_id.hpp"

#include <algorithm>

namespace citecorr {

namespace {

// Latency windows are clamped to this many days before being turned into
// calendar dates; far beyond any real archive's lifetime.
constexpr std::int64_t kDayClamp = 10'000'000;

std::int64_t clamp_days(std::int64_t d)
{
    return std::clamp(d, -kDayClamp, kDayClamp);
}

void require_normalized(const std::string& id)
{
    auto normalized = try_normalize_arxiv_id(id);
    if (!normalized || *normalized != id)
        throw InvalidRecord("malformed article id '" + id + "'");
}

} // namespace

std::string_view to_string(DownloadFormat f)
{
    switch (f) {
    case DownloadFormat::pdf: return "pdf";
    case DownloadFormat::ps: return "ps";
    case DownloadFormat::source: return "source";
    }
    return "pdf";
}

std::optional<DownloadFormat> parse_download_format(std::string_view s)
{
    if (s == "pdf") return DownloadFormat::pdf;
    if (s == "ps") return DownloadFormat::ps;
    if (s == "source") return DownloadFormat::source;
    return std::nullopt;
}

std::string_view to_string(LinkMethod m)
{
    return m == LinkMethod::identifier ? "identifier" : "bibliographic";
}

std::optional<LinkMethod> parse_link_method(std::string_view s)
{
    if (s == "identifier") return LinkMethod::identifier;
    if (s == "bibliographic") return LinkMethod::bibliographic;
    return std::nullopt;
}

UpsertResult CorpusStore::upsert_article(ArticleRecord record)
{
    require_normalized(record.id);
    if (record.subfield.empty())
        throw InvalidRecord("article '" + record.id + "' has no subfield");

    auto it = articles_.find(record.id);
    if (it == articles_.end()) {
        articles_.emplace(record.id, std::move(record));
        return UpsertResult::inserted;
    }
    ArticleRecord& stored = it->second;
    Date earliest = std::min(stored.first_deposit, record.first_deposit);
    if (!record.journal_ref && stored.journal_ref) {
        record.journal_ref = stored.journal_ref;
        if (record.journal_ref_text.empty())
            record.journal_ref_text = stored.journal_ref_text;
    }
    stored = std::move(record);
    stored.first_deposit = earliest;
    return UpsertResult::updated;
}

std::vector<DownloadEvent> CorpusStore::insert_downloads(std::span<const DownloadEvent> events)
{
    std::vector<DownloadEvent> fresh;
    for (const auto& e : events) {
        auto& per_article = events_[e.article_id];
        auto [it, inserted] = per_article.try_emplace(EventKey{e.day, e.host_domain}, e.format);
        if (inserted) {
            ++event_count_;
            fresh.push_back(e);
        } else if (e.format < it->second) {
            // Format is not part of the key; keeping the smallest makes the
            // final state independent of arrival order.
            it->second = e.format;
            fresh.push_back(e);
        }
    }
    return fresh;
}

std::size_t CorpusStore::record_downloads(std::span<const DownloadEvent> events)
{
    std::size_t before = event_count_;
    insert_downloads(events);
    return event_count_ - before;
}

std::vector<CitationLink> CorpusStore::insert_links(std::span<const CitationLink> links)
{
    std::vector<CitationLink> changed;
    for (const auto& link : links) {
        if (link.citing_id == link.cited_id) {
            ++self_links_skipped_;
            continue;
        }
        auto key = std::make_pair(link.citing_id, link.cited_id);
        auto [it, inserted] = links_.try_emplace(key, link.method);
        if (inserted) {
            inlinks_[link.cited_id].insert(link.citing_id);
        } else if (link.method == LinkMethod::identifier && it->second != LinkMethod::identifier) {
            it->second = LinkMethod::identifier;
        } else {
            continue;
        }
        changed.push_back({link.citing_id, link.cited_id, it->second, latency(link.citing_id, link.cited_id)});
    }
    return changed;
}

std::size_t CorpusStore::record_links(std::span<const CitationLink> links)
{
    std::size_t before = links_.size();
    insert_links(links);
    return links_.size() - before;
}

std::vector<ReferenceString> CorpusStore::insert_references(std::span<const ReferenceString> refs)
{
    std::vector<ReferenceString> fresh;
    for (const auto& r : refs) {
        if (references_.try_emplace({r.citing_id, r.index}, r.raw).second)
            fresh.push_back(r);
    }
    return fresh;
}

std::size_t CorpusStore::record_references(std::span<const ReferenceString> refs)
{
    return insert_references(refs).size();
}

const ArticleRecord* CorpusStore::find_article(std::string_view id) const
{
    auto it = articles_.find(id);
    return it == articles_.end() ? nullptr : &it->second;
}

const ArticleRecord& CorpusStore::article(std::string_view id) const
{
    if (const auto* a = find_article(id))
        return *a;
    throw UnknownArticle(std::string(id));
}

std::optional<std::int64_t> CorpusStore::latency(std::string_view citing, std::string_view cited) const
{
    const auto* a = find_article(citing);
    const auto* b = find_article(cited);
    if (!a || !b)
        return std::nullopt;
    return a->first_deposit - b->first_deposit;
}

ArticleCounts CorpusStore::counts_for(std::string_view id, const std::optional<DayWindow>& download_window,
                                      const std::optional<DayWindow>& citation_window) const
{
    const ArticleRecord& rec = article(id);
    ArticleCounts counts{rec.id, 0, 0};

    if (auto ev = events_.find(id); ev != events_.end()) {
        const EventMap& days = ev->second;
        if (!download_window) {
            counts.downloads = static_cast<std::int64_t>(days.size());
        } else if (download_window->min_days <= download_window->max_days) {
            Date lo = rec.first_deposit + clamp_days(download_window->min_days);
            Date hi = rec.first_deposit + clamp_days(download_window->max_days);
            auto first = days.lower_bound(EventKey{lo, {}});
            auto last = days.lower_bound(EventKey{hi + 1, {}});
            counts.downloads = std::distance(first, last);
        }
    }

    if (auto in = inlinks_.find(id); in != inlinks_.end()) {
        if (!citation_window) {
            counts.citations = static_cast<std::int64_t>(in->second.size());
        } else {
            for (const auto& citing : in->second) {
                const auto* c = find_article(citing);
                if (c && citation_window->contains(c->first_deposit - rec.first_deposit))
                    ++counts.citations;
            }
        }
    }
    return counts;
}

std::size_t CorpusStore::citation_impact(std::string_view id) const
{
    article(id);
    auto in = inlinks_.find(id);
    return in == inlinks_.end() ? 0 : in->second.size();
}

std::vector<CitationLink> CorpusStore::links() const
{
    std::vector<CitationLink> out;
    out.reserve(links_.size());
    for (const auto& [key, method] : links_)
        out.push_back({key.first, key.second, method, latency(key.first, key.second)});
    return out;
}

const std::set<std::string, std::less<>>& CorpusStore::inlinks(std::string_view cited) const
{
    static const std::set<std::string, std::less<>> empty;
    auto in = inlinks_.find(cited);
    return in == inlinks_.end() ? empty : in->second;
}

std::vector<Date> CorpusStore::download_days(std::string_view id) const
{
    std::vector<Date> days;
    if (auto ev = events_.find(id); ev != events_.end()) {
        days.reserve(ev->second.size());
        for (const auto& [key, format] : ev->second)
            days.push_back(key.day);
    }
    return days;
}

std::vector<DownloadEvent> CorpusStore::events() const
{
    std::vector<DownloadEvent> out;
    out.reserve(event_count_);
    for (const auto& [id, days] : events_)
        for (const auto& [key, format] : days)
            out.push_back({id, key.day, key.host_domain, format});
    return out;
}

std::vector<ReferenceString> CorpusStore::references() const
{
    std::vector<ReferenceString> out;
    out.reserve(references_.size());
    for (const auto& [key, raw] : references_)
        out.push_back({key.first, key.second, raw});
    return out;
}

std::map<std::string, std::size_t> CorpusStore::events_per_article() const
{
    std::map<std::string, std::size_t> out;
    for (const auto& [id, days] : events_)
        if (!days.empty())
            out.emplace(id, days.size());
    return out;
}

StoreStats CorpusStore::stats() const
{
    StoreStats s;
    s.articles = articles_.size();
    s.events = event_count_;
    for (const auto& [id, days] : events_)
        if (!articles_.count(id))
            s.events_unknown_article += days.size();
    s.links = links_.size();
    s.links_self_skipped = self_links_skipped_;
    s.references = references_.size();
    return s;
}

} // namespace citecorr
