#include "citecorr/service.hpp"

#include "citecorr/scatter_svg.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <limits>

namespace citecorr {

namespace {

constexpr std::array<std::string_view, 12> kQueryParams{
    "field",      "date_from",         "date_until",        "min_hits",          "max_hits",
    "min_impact", "max_impact",        "hits_latency_min",  "hits_latency_max",  "cites_latency_min",
    "cites_latency_max", "quartile"};

constexpr std::array<std::string_view, 8> kDistributionKinds{
    "cite-freq",           "download-freq",           "cite-latency", "download-latency",
    "cite-latency-cohort", "download-latency-cohort", "deposits",     "age-profile"};

constexpr std::array<std::int64_t, 9> kDefaultCaps{30, 60, 90, 120, 150, 180, 210, 365, 730};

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_window(const std::optional<DayWindow>& w)
{
    if (!w)
        return "-";
    auto side = [](std::int64_t v, bool low) {
        if (low ? v == std::numeric_limits<std::int64_t>::min() : v == std::numeric_limits<std::int64_t>::max())
            return std::string("*");
        return std::to_string(v);
    };
    return side(w->min_days, true) + " " + side(w->max_days, false);
}

std::string_view status_name(CorrelationStatus s)
{
    switch (s) {
    case CorrelationStatus::ok: return "ok";
    case CorrelationStatus::insufficient: return "insufficient";
    case CorrelationStatus::degenerate: return "degenerate";
    }
    return "insufficient";
}

std::string_view value_of(const ParamMap& params, std::string_view key)
{
    auto it = params.find(key);
    return it == params.end() ? std::string_view{} : text::trim(it->second);
}

std::optional<std::int64_t> parse_int(const ParamMap& params, std::string_view key)
{
    std::string_view v = value_of(params, key);
    if (v.empty())
        return std::nullopt;
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw QueryError("parameter " + std::string(key) + " is not an integer: '" + std::string(v) + "'");
    return out;
}

std::optional<DayWindow> parse_window(const ParamMap& params, std::string_view min_key, std::string_view max_key)
{
    auto lo = parse_int(params, min_key);
    auto hi = parse_int(params, max_key);
    if (!lo && !hi)
        return std::nullopt;
    DayWindow w;
    if (lo)
        w.min_days = *lo;
    if (hi)
        w.max_days = *hi;
    return w;
}

ServiceResponse error_response(ApiErrorCode code, const std::string& message)
{
    return {http_status(code), "text/plain; charset=utf-8", format_error({code, message})};
}

template <typename Fn>
ServiceResponse guarded(Fn&& fn)
{
    try {
        return fn();
    } catch (const QueryError& e) {
        return error_response(ApiErrorCode::bad_query, e.what());
    } catch (const UnknownArticle& e) {
        return error_response(ApiErrorCode::not_found, e.what());
    } catch (const std::exception& e) {
        return error_response(ApiErrorCode::io, e.what());
    }
}

void append_line(std::string& out, std::string_view key, std::string_view value)
{
    out.append(key);
    out.push_back(' ');
    out.append(value);
    out.push_back('\n');
}

} // namespace

std::string_view to_string(ApiErrorCode c)
{
    switch (c) {
    case ApiErrorCode::bad_query: return "bad_query";
    case ApiErrorCode::degenerate: return "degenerate";
    case ApiErrorCode::not_found: return "not_found";
    case ApiErrorCode::io: return "io";
    }
    return "io";
}

int http_status(ApiErrorCode c)
{
    switch (c) {
    case ApiErrorCode::bad_query: return 400;
    case ApiErrorCode::degenerate: return 200;
    case ApiErrorCode::not_found: return 404;
    case ApiErrorCode::io: return 500;
    }
    return 500;
}

std::span<const std::string_view> query_param_names()
{
    return kQueryParams;
}

CorrelationQuery query_from_params(const ParamMap& params, std::span<const std::string_view> extra_keys)
{
    for (const auto& [key, value] : params) {
        bool known = std::find(kQueryParams.begin(), kQueryParams.end(), key) != kQueryParams.end()
                     || std::find(extra_keys.begin(), extra_keys.end(), key) != extra_keys.end();
        if (!known)
            throw QueryError("unknown parameter '" + key + "'");
    }

    CorrelationQuery q;
    q.field = std::string(value_of(params, "field"));
    for (auto [key, target] : {std::pair{"date_from", &q.date_from}, std::pair{"date_until", &q.date_until}}) {
        std::string_view v = value_of(params, key);
        if (v.empty())
            continue;
        auto bound = parse_date_bound(v);
        if (!bound)
            throw QueryError(std::string("malformed date for ") + key + ": '" + std::string(v) + "' (want YYYYMMDD)");
        *target = *bound;
    }
    if (auto v = parse_int(params, "min_hits")) q.min_hits = *v;
    if (auto v = parse_int(params, "max_hits")) q.max_hits = *v;
    if (auto v = parse_int(params, "min_impact")) q.min_impact = *v;
    if (auto v = parse_int(params, "max_impact")) q.max_impact = *v;
    q.hits_latency = parse_window(params, "hits_latency_min", "hits_latency_max");
    q.cites_latency = parse_window(params, "cites_latency_min", "cites_latency_max");
    if (auto v = value_of(params, "quartile"); !v.empty()) {
        auto quartile = parse_quartile(v);
        if (!quartile)
            throw QueryError("unknown quartile '" + std::string(v) + "'");
        q.quartile = *quartile;
    }
    q.validate();
    return q;
}

std::string format_result(const CorrelationResult& r)
{
    std::string out = "citecorr-result 1\n";
    const CorrelationQuery& q = r.query;
    append_line(out, "query.field", q.field.empty() ? "all" : q.field);
    append_line(out, "query.date_from", std::to_string(q.date_from));
    append_line(out, "query.date_until", std::to_string(q.date_until));
    append_line(out, "query.min_hits", std::to_string(q.min_hits));
    append_line(out, "query.max_hits", std::to_string(q.max_hits));
    append_line(out, "query.min_impact", std::to_string(q.min_impact));
    append_line(out, "query.max_impact", std::to_string(q.max_impact));
    append_line(out, "query.hits_latency", fmt_window(q.hits_latency));
    append_line(out, "query.cites_latency", fmt_window(q.cites_latency));
    append_line(out, "query.quartile", to_string(q.quartile));
    append_line(out, "n", std::to_string(r.n));
    append_line(out, "downloads.sum", fmt_double(r.downloads.sum));
    append_line(out, "downloads.mean", fmt_double(r.downloads.mean));
    append_line(out, "downloads.sd", fmt_double(r.downloads.sd));
    append_line(out, "citations.sum", fmt_double(r.citations.sum));
    append_line(out, "citations.mean", fmt_double(r.citations.mean));
    append_line(out, "citations.sd", fmt_double(r.citations.sd));
    append_line(out, "status", status_name(r.status));
    append_line(out, "degenerate", r.r ? "false" : "true");
    append_line(out, "r", r.r ? fmt_double(*r.r) : "undefined");
    append_line(out, "fit.slope", r.fit ? fmt_double(r.fit->slope) : "undefined");
    append_line(out, "fit.intercept", r.fit ? fmt_double(r.fit->intercept) : "undefined");
    append_line(out, "ratio", r.ratio ? fmt_double(*r.ratio) : "undefined");
    append_line(out, "grid.bin_width", fmt_double(r.grid.bin_width));
    append_line(out, "grid.cells", std::to_string(r.grid.cells.size()));
    for (const auto& [cell, count] : r.grid.cells) {
        append_line(out, "cell",
                    std::to_string(cell.first) + " " + std::to_string(cell.second) + " " + std::to_string(count) + " "
                        + std::to_string(DensityGrid::shade(count)));
    }
    return out;
}

std::string format_sweep_csv(std::span<const SweepRow> rows)
{
    std::string out = "max_latency_days,mean_downloads,r\n";
    for (const auto& row : rows)
        out += std::to_string(row.max_latency_days) + "," + fmt_double(row.mean_downloads) + ","
               + (row.r ? fmt_double(*row.r) : std::string("undefined")) + "\n";
    return out;
}

std::string format_histogram(std::string_view kind, const std::map<int, Histogram>& series, bool cohorts)
{
    std::string out = "citecorr-histogram 1\n";
    append_line(out, "kind", kind);
    append_line(out, "series.count", std::to_string(series.size()));
    for (const auto& [key, hist] : series) {
        append_line(out, "series", cohorts ? std::to_string(key) : std::string("all"));
        for (const auto& [bucket, count] : hist)
            append_line(out, "bucket", std::to_string(bucket) + " " + std::to_string(count));
    }
    return out;
}

std::string format_monthly(std::string_view kind, const std::map<YearMonth, std::int64_t>& series)
{
    std::string out = "citecorr-histogram 1\n";
    append_line(out, "kind", kind);
    append_line(out, "series.count", series.empty() ? "0" : "1");
    if (!series.empty())
        append_line(out, "series", "all");
    for (const auto& [month, count] : series)
        append_line(out, "bucket", month.str() + " " + std::to_string(count));
    return out;
}

std::string format_age_profile(std::span<const AgeBar> bars, std::size_t sample_size, YearMonth window,
                               std::uint64_t seed)
{
    std::string out = "citecorr-histogram 1\n";
    append_line(out, "kind", "age-profile");
    append_line(out, "window", window.str());
    append_line(out, "sample_size", std::to_string(sample_size));
    append_line(out, "seed", std::to_string(seed));
    append_line(out, "bars", std::to_string(bars.size()));
    for (const auto& b : bars)
        append_line(out, "bar",
                    b.month.str() + " " + std::to_string(b.articles) + " " + std::to_string(b.sampled) + " "
                        + std::to_string(b.downloads) + " " + std::to_string(b.citations));
    return out;
}

std::string format_meta(const StoreStats& s)
{
    std::string out = "citecorr-meta 1\n";
    append_line(out, "articles", std::to_string(s.articles));
    append_line(out, "events", std::to_string(s.events));
    append_line(out, "events_unknown_article", std::to_string(s.events_unknown_article));
    append_line(out, "links", std::to_string(s.links));
    append_line(out, "links_self_skipped", std::to_string(s.links_self_skipped));
    append_line(out, "references", std::to_string(s.references));
    return out;
}

std::string format_error(const ApiError& error)
{
    std::string out = "citecorr-error 1\n";
    append_line(out, "code", to_string(error.code));
    std::string message = error.message;
    std::replace(message.begin(), message.end(), '\n', ' ');
    append_line(out, "message", message);
    return out;
}

ServiceResponse QueryService::correlate(const ParamMap& params) const
{
    return guarded([&] {
        CorrelationQuery q = query_from_params(params);
        return ServiceResponse{200, "text/plain; charset=utf-8", format_result(citecorr::correlate(store_, q))};
    });
}

ServiceResponse QueryService::sweep(const ParamMap& params) const
{
    return guarded([&] {
        static constexpr std::array<std::string_view, 1> extra{"caps"};
        CorrelationQuery q = query_from_params(params, extra);
        std::vector<std::int64_t> caps(kDefaultCaps.begin(), kDefaultCaps.end());
        if (auto v = value_of(params, "caps"); !v.empty()) {
            caps.clear();
            for (auto part : text::split(v, ',')) {
                part = text::trim(part);
                std::int64_t cap = 0;
                auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), cap);
                if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
                    throw QueryError("caps must be a comma-separated list of day counts");
                caps.push_back(cap);
            }
        }
        auto rows = latency_sweep(store_, q, caps);
        return ServiceResponse{200, "text/csv; charset=utf-8", format_sweep_csv(rows)};
    });
}

ServiceResponse QueryService::distribution(const ParamMap& params) const
{
    return guarded([&] {
        static constexpr std::array<std::string_view, 5> extra{"kind", "bucket", "sample_size", "window", "seed"};
        CorrelationQuery q = query_from_params(params, extra);
        std::string kind(value_of(params, "kind"));
        if (std::find(kDistributionKinds.begin(), kDistributionKinds.end(), kind) == kDistributionKinds.end())
            throw QueryError("unknown distribution kind '" + kind + "'");

        auto unit_for = [&](LatencyUnit fallback) {
            std::string_view b = value_of(params, "bucket");
            if (b.empty())
                return fallback;
            if (b == "days")
                return LatencyUnit::days;
            if (b == "months")
                return LatencyUnit::months;
            throw QueryError("bucket must be 'days' or 'months'");
        };

        std::string body;
        if (kind == "cite-freq" || kind == "download-freq") {
            CountKind ck = kind == "cite-freq" ? CountKind::citations : CountKind::downloads;
            std::map<int, Histogram> one;
            Histogram h = frequency_histogram(store_, ck, q);
            if (!h.empty())
                one.emplace(0, std::move(h));
            body = format_histogram(kind, one, false);
        } else if (kind == "cite-latency" || kind == "download-latency") {
            CountKind ck = kind == "cite-latency" ? CountKind::citations : CountKind::downloads;
            body = format_histogram(kind, latency_histogram(store_, ck, unit_for(LatencyUnit::days), false, q), false);
        } else if (kind == "cite-latency-cohort" || kind == "download-latency-cohort") {
            CountKind ck = kind == "cite-latency-cohort" ? CountKind::citations : CountKind::downloads;
            body = format_histogram(kind, latency_histogram(store_, ck, unit_for(LatencyUnit::months), true, q), true);
        } else if (kind == "deposits") {
            body = format_monthly(kind, deposits_per_month(store_));
        } else {
            std::size_t sample_size = 300;
            if (auto v = parse_int(params, "sample_size")) {
                if (*v < 1)
                    throw QueryError("sample_size must be positive");
                sample_size = static_cast<std::size_t>(*v);
            }
            std::uint64_t seed = 1;
            if (auto v = parse_int(params, "seed"))
                seed = static_cast<std::uint64_t>(*v);
            YearMonth window;
            if (auto v = value_of(params, "window"); !v.empty()) {
                auto parsed = YearMonth::parse(v);
                if (!parsed)
                    throw QueryError("window must be YYYY-MM");
                window = *parsed;
            } else {
                auto months = deposits_per_month(store_);
                window = months.empty() ? YearMonth{} : months.rbegin()->first;
            }
            body = format_age_profile(age_sample_profile(store_, sample_size, window, seed), sample_size, window, seed);
        }
        return ServiceResponse{200, "text/plain; charset=utf-8", std::move(body)};
    });
}

ServiceResponse QueryService::scatter(const ParamMap& params) const
{
    return guarded([&] {
        CorrelationQuery q = query_from_params(params);
        return ServiceResponse{200, "image/svg+xml", render_scatter(citecorr::correlate(store_, q))};
    });
}

ServiceResponse QueryService::meta() const
{
    return ServiceResponse{200, "text/plain; charset=utf-8", format_meta(store_.stats())};
}

std::span<const std::string_view> QueryService::distribution_kinds()
{
    return kDistributionKinds;
}

} // namespace citecorr
