#pragma once

#include "citecorr/corpus_store.hpp"
#include "citecorr/correlator.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace citecorr {

/// Request parameters by name, as they appear in the HTTP query string.
/// The CLI translates its flags into the same map (`--date-from` becomes
/// `date_from`) so both front ends share one parser and one renderer.
using ParamMap = std::map<std::string, std::string, std::less<>>;

enum class ApiErrorCode { bad_query, degenerate, not_found, io };

std::string_view to_string(ApiErrorCode c);
int http_status(ApiErrorCode c);

struct ApiError {
    ApiErrorCode code = ApiErrorCode::bad_query;
    std::string message;
};

/// The query filter parameter names, in document order.
std::span<const std::string_view> query_param_names();

/// Builds and validates a query. Blank values count as absent. Any key not
/// in query_param_names() or `extra_keys` is rejected. Throws QueryError.
CorrelationQuery query_from_params(const ParamMap& params, std::span<const std::string_view> extra_keys = {});

/// Versioned line-oriented documents. Doubles are printed with 17
/// significant digits so that equal results render byte-identically.
std::string format_result(const CorrelationResult& result);
std::string format_sweep_csv(std::span<const SweepRow> rows);
std::string format_histogram(std::string_view kind, const std::map<int, Histogram>& series, bool cohorts);
std::string format_monthly(std::string_view kind, const std::map<YearMonth, std::int64_t>& series);
std::string format_age_profile(std::span<const AgeBar> bars, std::size_t sample_size, YearMonth window,
                               std::uint64_t seed);
std::string format_meta(const StoreStats& stats);
std::string format_error(const ApiError& error);

struct ServiceResponse {
    int status = 200;
    std::string content_type = "text/plain; charset=utf-8";
    std::string body;
};

/// Read-only query engine over one corpus snapshot, shared by the CLI and
/// the HTTP server. Safe for concurrent use.
class QueryService {
public:
    explicit QueryService(const CorpusStore& store) : store_(store) {}

    ServiceResponse correlate(const ParamMap& params) const;
    /// `caps`: comma-separated list; defaults to 30,60,90,120,150,180,210,365,730.
    ServiceResponse sweep(const ParamMap& params) const;
    /// `kind`: cite-freq, download-freq, cite-latency, download-latency,
    /// cite-latency-cohort, download-latency-cohort, deposits, age-profile.
    ServiceResponse distribution(const ParamMap& params) const;
    ServiceResponse scatter(const ParamMap& params) const;
    ServiceResponse meta() const;

    static std::span<const std::string_view> distribution_kinds();

private:
    const CorpusStore& store_;
};

} // namespace citecorr
