#include "citecorr/correlator.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace citecorr {

namespace {

constexpr std::string_view kHepGroup[] = {"hep-th", "hep-ph", "hep-lat", "hep-ex"};

// Uniform integer in [0, n) from a 64-bit engine, by rejection. Not using
// std::uniform_int_distribution keeps sampling identical across standard
// libraries.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n)
{
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
        std::uint64_t v = gen();
        if (v < limit)
            return v % n;
    }
}

std::int64_t floor_div(std::int64_t a, double b)
{
    return static_cast<std::int64_t>(std::floor(static_cast<double>(a) / b));
}

} // namespace

std::string_view to_string(Quartile q)
{
    switch (q) {
    case Quartile::all: return "all";
    case Quartile::bottom: return "bottom";
    case Quartile::lower: return "lower";
    case Quartile::upper: return "upper";
    case Quartile::top: return "top";
    }
    return "all";
}

std::optional<Quartile> parse_quartile(std::string_view s)
{
    std::string v = text::to_lower(text::trim(s));
    if (v.empty() || v == "all") return Quartile::all;
    if (v == "bottom") return Quartile::bottom;
    if (v == "lower") return Quartile::lower;
    if (v == "upper") return Quartile::upper;
    if (v == "top") return Quartile::top;
    return std::nullopt;
}

void CorrelationQuery::validate() const
{
    if (date_from > date_until)
        throw QueryError("date_from is after date_until");
    if (min_hits < 0 || min_impact < 0)
        throw QueryError("count bounds must be non-negative");
    if (min_hits > max_hits)
        throw QueryError("min_hits exceeds max_hits");
    if (min_impact > max_impact)
        throw QueryError("min_impact exceeds max_impact");
    if (hits_latency && hits_latency->min_days > hits_latency->max_days)
        throw QueryError("hits latency minimum exceeds maximum");
    if (cites_latency && cites_latency->min_days > cites_latency->max_days)
        throw QueryError("cites latency minimum exceeds maximum");
}

bool CorrelationQuery::selects_subfield(std::string_view subfield) const
{
    std::string_view f = text::trim(field);
    if (f.empty() || text::to_lower(f) == "all")
        return true;
    std::string sub = text::to_lower(subfield);
    for (auto part : text::split(f, ',')) {
        std::string tag = text::to_lower(text::trim(part));
        if (tag == sub)
            return true;
        if (tag == "hep" && std::find(std::begin(kHepGroup), std::end(kHepGroup), sub) != std::end(kHepGroup))
            return true;
    }
    return false;
}

bool CorrelationQuery::selects_date(const Date& d) const
{
    int v = d.yyyymmdd();
    return v >= date_from && v <= date_until;
}

std::vector<ArticleCounts> quartile_filter(std::vector<ArticleCounts> pairs, Quartile quartile)
{
    if (quartile == Quartile::all)
        return pairs;
    std::sort(pairs.begin(), pairs.end(), [](const ArticleCounts& a, const ArticleCounts& b) {
        if (a.citations != b.citations)
            return a.citations > b.citations;
        return a.id < b.id;
    });
    const std::size_t n = pairs.size();
    const std::size_t c1 = (n + 3) / 4, c2 = (n + 1) / 2, c3 = (3 * n + 3) / 4;
    std::size_t lo = 0, hi = n;
    switch (quartile) {
    case Quartile::top: lo = 0; hi = c1; break;
    case Quartile::upper: lo = c1; hi = c2; break;
    case Quartile::lower: lo = c2; hi = c3; break;
    case Quartile::bottom: lo = c3; hi = n; break;
    case Quartile::all: break;
    }
    return {pairs.begin() + static_cast<std::ptrdiff_t>(lo), pairs.begin() + static_cast<std::ptrdiff_t>(hi)};
}

std::vector<ArticleCounts> select_pairs(const CorpusStore& store, const CorrelationQuery& query)
{
    query.validate();
    std::vector<ArticleCounts> pairs;
    for (const auto& [id, article] : store.articles()) {
        if (!query.selects_subfield(article.subfield) || !query.selects_date(article.first_deposit))
            continue;
        ArticleCounts c = store.counts_for(id, query.hits_latency, query.cites_latency);
        if (c.downloads < query.min_hits || c.downloads > query.max_hits)
            continue;
        if (c.citations < query.min_impact || c.citations > query.max_impact)
            continue;
        pairs.push_back(std::move(c));
    }
    if (query.quartile != Quartile::all) {
        pairs = quartile_filter(std::move(pairs), query.quartile);
        std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    }
    return pairs;
}

int DensityGrid::bin_of(double ln_value) const
{
    return static_cast<int>(std::floor(ln_value / bin_width));
}

int DensityGrid::shade(std::int64_t count)
{
    return static_cast<int>(std::clamp<std::int64_t>(count, 1, 4));
}

std::int64_t DensityGrid::total() const
{
    std::int64_t t = 0;
    for (const auto& [cell, count] : cells)
        t += count;
    return t;
}

CorrelationResult correlate_pairs(std::span<const ArticleCounts> pairs, const CorrelationQuery& query,
                                  double bin_width)
{
    CorrelationResult result;
    result.query = query;
    result.n = pairs.size();
    result.grid.bin_width = bin_width;

    std::vector<double> raw_d, raw_c, ln_d, ln_c;
    raw_d.reserve(pairs.size());
    raw_c.reserve(pairs.size());
    ln_d.reserve(pairs.size());
    ln_c.reserve(pairs.size());
    for (const auto& p : pairs) {
        raw_d.push_back(static_cast<double>(p.downloads));
        raw_c.push_back(static_cast<double>(p.citations));
        ln_d.push_back(ln_transform(p.downloads));
        ln_c.push_back(ln_transform(p.citations));
        ++result.grid.cells[{result.grid.bin_of(ln_d.back()), result.grid.bin_of(ln_c.back())}];
    }

    result.downloads = summarize(raw_d);
    result.citations = summarize(raw_c);
    PearsonResult pr = pearson(ln_d, ln_c);
    result.status = pr.status;
    result.r = pr.r;
    result.fit = least_squares(ln_d, ln_c);
    if (result.n > 0 && result.citations.mean > 0)
        result.ratio = result.downloads.mean / result.citations.mean;
    return result;
}

CorrelationResult correlate(const CorpusStore& store, const CorrelationQuery& query, double bin_width)
{
    auto pairs = select_pairs(store, query);
    return correlate_pairs(pairs, query, bin_width);
}

std::vector<SweepRow> latency_sweep(const CorpusStore& store, const CorrelationQuery& query,
                                    std::span<const std::int64_t> caps)
{
    query.validate();
    const std::int64_t min_days = query.hits_latency ? query.hits_latency->min_days : kDefaultSweepMinLatency;
    std::vector<SweepRow> rows;
    rows.reserve(caps.size());
    for (std::int64_t cap : caps) {
        if (cap < min_days)
            throw QueryError("sweep cap " + std::to_string(cap) + " is below the latency minimum");
        CorrelationQuery q = query;
        q.hits_latency = DayWindow{min_days, cap};
        CorrelationResult r = correlate(store, q);
        rows.push_back({cap, r.n, r.downloads.mean, r.status, r.r});
    }
    return rows;
}

Histogram frequency_histogram(const CorpusStore& store, CountKind kind, const CorrelationQuery& query)
{
    Histogram h;
    for (const auto& p : select_pairs(store, query))
        ++h[kind == CountKind::downloads ? p.downloads : p.citations];
    return h;
}

std::map<int, Histogram> latency_histogram(const CorpusStore& store, CountKind kind, LatencyUnit unit,
                                           bool cohort_by_year, const CorrelationQuery& query)
{
    query.validate();
    std::map<int, Histogram> series;
    auto bucket = [unit](std::int64_t days) {
        return unit == LatencyUnit::days ? days : floor_div(days, kDaysPerMonth);
    };
    for (const auto& [id, article] : store.articles()) {
        if (!query.selects_subfield(article.subfield) || !query.selects_date(article.first_deposit))
            continue;
        int cohort = cohort_by_year ? article.first_deposit.year() : 0;
        if (kind == CountKind::downloads) {
            for (const Date& day : store.download_days(id))
                ++series[cohort][bucket(day - article.first_deposit)];
        } else {
            for (const auto& citing : store.inlinks(id)) {
                if (const auto* c = store.find_article(citing))
                    ++series[cohort][bucket(c->first_deposit - article.first_deposit)];
            }
        }
    }
    return series;
}

std::map<YearMonth, std::int64_t> deposits_per_month(const CorpusStore& store)
{
    std::map<YearMonth, std::int64_t> series;
    for (const auto& [id, article] : store.articles())
        ++series[YearMonth::of(article.first_deposit)];
    return series;
}

std::vector<AgeBar> age_sample_profile(const CorpusStore& store, std::size_t sample_size, YearMonth window,
                                       std::uint64_t seed)
{
    std::map<YearMonth, std::vector<std::string>> by_month; // ids ascending within a month
    for (const auto& [id, article] : store.articles()) {
        YearMonth m = YearMonth::of(article.first_deposit);
        if (m < window)
            by_month[m].push_back(id);
    }
    std::vector<AgeBar> bars;
    if (by_month.empty())
        return bars;

    std::mt19937_64 gen(seed);
    for (YearMonth m = by_month.begin()->first; m < window; m = m.next()) {
        AgeBar bar;
        bar.month = m;
        auto it = by_month.find(m);
        if (it != by_month.end()) {
            std::vector<std::string>& ids = it->second;
            bar.articles = ids.size();
            std::size_t take = std::min(sample_size, ids.size());
            // Partial Fisher-Yates: the first `take` slots become the sample.
            if (take < ids.size())
                for (std::size_t i = 0; i < take; ++i)
                    std::swap(ids[i], ids[i + uniform_below(gen, ids.size() - i)]);
            bar.sampled = take;
            for (std::size_t i = 0; i < take; ++i) {
                for (const Date& day : store.download_days(ids[i]))
                    if (window.contains(day))
                        ++bar.downloads;
                for (const auto& citing : store.inlinks(ids[i]))
                    if (const auto* c = store.find_article(citing); c && window.contains(c->first_deposit))
                        ++bar.citations;
            }
        }
        bars.push_back(bar);
    }
    return bars;
}

} // namespace citecorr
