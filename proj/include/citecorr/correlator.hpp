#pragma once

#include "citecorr/corpus_store.hpp"
#include "citecorr/statistics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace citecorr {

class QueryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Quartile { all, bottom, lower, upper, top };

std::string_view to_string(Quartile q);
std::optional<Quartile> parse_quartile(std::string_view s);

/// Filter set of one correlation run. Defaults select everything.
struct CorrelationQuery {
    /// Comma-separated subfield tags or group names ("hep" = hep-th,
    /// hep-ph, hep-lat, hep-ex); empty or "all" selects every subfield.
    std::string field;
    int date_from = 19000000;  ///< inclusive YYYYMMDD on first deposit
    int date_until = 20101231; ///< inclusive
    std::int64_t min_hits = 0;
    std::int64_t max_hits = 10000;
    std::int64_t min_impact = 0;
    std::int64_t max_impact = 10000;
    std::optional<DayWindow> hits_latency;  ///< which downloads count
    std::optional<DayWindow> cites_latency; ///< which citations count
    Quartile quartile = Quartile::all;

    /// Throws QueryError on inverted ranges or negative bounds.
    void validate() const;
    bool selects_subfield(std::string_view subfield) const;
    bool selects_date(const Date& d) const;

    friend bool operator==(const CorrelationQuery&, const CorrelationQuery&) = default;
};

/// Ranks by citations descending, ties by ascending id, and keeps one
/// slice. Cuts fall at ceil(n/4), ceil(n/2) and ceil(3n/4): top is the first
/// slice, bottom the last.
std::vector<ArticleCounts> quartile_filter(std::vector<ArticleCounts> pairs, Quartile quartile);

/// Articles passing field and date filters, counted under the latency
/// windows, then bounded by hits/impact, then sliced by quartile. Ordered
/// by id.
std::vector<ArticleCounts> select_pairs(const CorpusStore& store, const CorrelationQuery& query);

/// Count of articles per (ln downloads, ln citations) cell.
struct DensityGrid {
    double bin_width = 0.05;
    std::map<std::pair<int, int>, std::int64_t> cells;

    int bin_of(double ln_value) const;
    /// Grey level 1..4; 4 means four or more articles.
    static int shade(std::int64_t count);
    std::int64_t total() const;
};

struct CorrelationResult {
    CorrelationQuery query;
    std::size_t n = 0;
    Summary downloads; ///< on raw counts
    Summary citations; ///< on raw counts
    CorrelationStatus status = CorrelationStatus::insufficient;
    std::optional<double> r; ///< on ln(count + 1) of both variables
    std::optional<LinearFit> fit; ///< ln citations against ln downloads
    DensityGrid grid;
    std::optional<double> ratio; ///< mean downloads / mean citations
};

CorrelationResult correlate_pairs(std::span<const ArticleCounts> pairs, const CorrelationQuery& query,
                                  double bin_width = 0.05);
CorrelationResult correlate(const CorpusStore& store, const CorrelationQuery& query, double bin_width = 0.05);

struct SweepRow {
    std::int64_t max_latency_days = 0;
    std::size_t n = 0;
    double mean_downloads = 0;
    CorrelationStatus status = CorrelationStatus::insufficient;
    std::optional<double> r;
};

inline constexpr std::int64_t kDefaultSweepMinLatency = 7;

/// One correlate run per cap with downloads windowed to [min, cap], where
/// min is the query's hits-latency minimum or 7 days.
std::vector<SweepRow> latency_sweep(const CorpusStore& store, const CorrelationQuery& query,
                                    std::span<const std::int64_t> caps);

enum class CountKind { downloads, citations };

using Histogram = std::map<std::int64_t, std::int64_t>;

/// Articles per count value over the pairs select_pairs returns.
Histogram frequency_histogram(const CorpusStore& store, CountKind kind, const CorrelationQuery& query);

enum class LatencyUnit { days, months };

/// Mean Gregorian month; month buckets are floor(days / this).
inline constexpr double kDaysPerMonth = 365.2425 / 12.0;

/// Latency counts for downloads (event day - deposit) or citations (citing
/// deposit - cited deposit, negatives included) of the articles passing the
/// query's field and date filters. Keyed by deposit year of the downloaded
/// or cited article when `cohort_by_year`, else a single series keyed 0.
std::map<int, Histogram> latency_histogram(const CorpusStore& store, CountKind kind, LatencyUnit unit,
                                           bool cohort_by_year, const CorrelationQuery& query = {});

std::map<YearMonth, std::int64_t> deposits_per_month(const CorpusStore& store);

struct AgeBar {
    YearMonth month;
    std::size_t articles = 0; ///< deposited that month
    std::size_t sampled = 0;
    std::int64_t downloads = 0; ///< by the sample, during the window month
    std::int64_t citations = 0; ///< to the sample, from articles deposited in the window month
};

/// For every month from the earliest deposit up to the one before
/// `window`, a seeded uniform sample of at most `sample_size` articles and
/// the activity they received in `window`. Same seed, same output.
std::vector<AgeBar> age_sample_profile(const CorpusStore& store, std::size_t sample_size, YearMonth window,
                                       std::uint64_t seed);

} // namespace citecorr
