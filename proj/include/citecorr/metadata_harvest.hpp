#pragma once

#include "citecorr/types.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace citecorr {

/// The Dublin Core fields of one OAI-PMH record, as found in the XML. No
/// validation has happened yet; parse_record does that.
struct RawRecord {
    std::string oai_identifier;            ///< header/identifier
    std::vector<std::string> datestamps;   ///< header/datestamp plus every dc:date
    std::vector<std::string> set_specs;
    bool deleted = false;
    std::vector<std::string> titles;
    std::vector<std::string> creators;
    std::vector<std::string> dc_identifiers;
    std::vector<std::string> sources;
    std::string origin; ///< page label, for diagnostics
};

struct HarvestPage {
    std::vector<RawRecord> records;
    std::optional<std::string> resumption_token; ///< absent on the final page
};

class HarvestError : public std::runtime_error {
public:
    HarvestError(const std::string& what, std::string page, std::optional<std::string> last_token = std::nullopt)
        : std::runtime_error(what), page_(std::move(page)), last_token_(std::move(last_token))
    {
    }
    /// File path or request URL of the failing page.
    const std::string& page() const { return page_; }
    /// Token to resume from; absent when the failure was on the first page.
    const std::optional<std::string>& last_token() const { return last_token_; }

private:
    std::string page_;
    std::optional<std::string> last_token_;
};

class RecordRejected : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses one ListRecords response. An OAI `noRecordsMatch` error is an
/// empty final page; any other protocol error or malformed XML throws
/// HarvestError naming `label`.
HarvestPage parse_list_records(std::string_view xml, const std::string& label);

/// One saved ListRecords page. Throws HarvestError.
HarvestPage load_page_file(const std::filesystem::path& file);

/// Reads page files in the given order and yields every record they hold.
/// Deleted records are skipped.
std::vector<RawRecord> harvest_files(std::span<const std::filesystem::path> pages);

/// Page files of a directory (`*.xml`, sorted by name), or the file itself.
std::vector<std::filesystem::path> list_page_files(const std::filesystem::path& source);

struct HttpReply {
    int status = 0; ///< 0 means transport failure
    std::string body;
    std::optional<int> retry_after_seconds;
};

/// GET of a path-and-query relative to the endpoint base.
using HttpFetch = std::function<HttpReply(const std::string& path_and_query)>;

struct HarvestOptions {
    std::string metadata_prefix = "oai_dc";
    std::optional<std::string> set;
    std::optional<std::string> from;  ///< YYYY-MM-DD
    std::optional<std::string> until; ///< YYYY-MM-DD
    std::optional<std::string> resume_token;
    int max_attempts = 5;
    std::chrono::milliseconds initial_backoff{1000};
    std::chrono::milliseconds max_backoff{60000};
    /// Replaced in tests so that retries do not actually wait.
    std::function<void(std::chrono::milliseconds)> sleep;
};

struct HarvestReport {
    std::size_t requests = 0;
    std::size_t retries = 0;
    std::vector<std::chrono::milliseconds> waits;
};

/// Issues ListRecords against an OAI-PMH endpoint and follows
/// resumptionToken until it is absent. Transport failures and 5xx replies
/// are retried with exponential backoff (503 Retry-After honoured); once
/// attempts run out HarvestError carries the last good token.
std::vector<RawRecord> harvest_endpoint(const HttpFetch& fetch, const HarvestOptions& options,
                                        HarvestReport* report = nullptr);

/// Page-at-a-time form of harvest_endpoint. `on_page` sees every page,
/// deleted records included, as soon as it parses, so callers can persist
/// progress before a later page fails.
void harvest_endpoint_pages(const HttpFetch& fetch, const HarvestOptions& options,
                            const std::function<void(HarvestPage&)>& on_page, HarvestReport* report = nullptr);

/// HttpFetch backed by an HTTP client for `base_url` such as
/// "http://export.arxiv.org/oai2".
HttpFetch make_http_fetch(const std::string& base_url, std::chrono::seconds timeout = std::chrono::seconds(60));

/// Validates and normalizes one record. Earliest date wins; subfield comes
/// from the old-style archive prefix, else from the first set spec.
/// Throws RecordRejected with a diagnostic.
ArticleRecord parse_record(const RawRecord& raw);

/// parse_record over a lone `<record>` element.
ArticleRecord parse_record_xml(std::string_view record_xml);

} // namespace citecorr
