#include "citecorr/metadata_harvest.hpp"

#include "citecorr/arxiv_id.hpp"
#include "citecorr/journal_ref.hpp"
#include "text_util.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

namespace citecorr {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace {

std::string_view local_name(std::string_view qualified)
{
    auto colon = qualified.rfind(':');
    return colon == std::string_view::npos ? qualified : qualified.substr(colon + 1);
}

const pt::ptree* child(const pt::ptree& node, std::string_view name)
{
    for (const auto& [key, value] : node)
        if (local_name(key) == name)
            return &value;
    return nullptr;
}

std::string text_of(const pt::ptree& node)
{
    return text::collapse_whitespace(node.data());
}

RawRecord read_record(const pt::ptree& record, const std::string& label)
{
    RawRecord raw;
    raw.origin = label;
    if (const auto* header = child(record, "header")) {
        if (auto status = header->get_optional<std::string>("<xmlattr>.status"))
            raw.deleted = *status == "deleted";
        for (const auto& [key, value] : *header) {
            auto name = local_name(key);
            if (name == "identifier")
                raw.oai_identifier = text_of(value);
            else if (name == "datestamp")
                raw.datestamps.push_back(text_of(value));
            else if (name == "setSpec")
                raw.set_specs.push_back(text_of(value));
        }
    }
    if (const auto* metadata = child(record, "metadata")) {
        for (const auto& [container_key, dc] : *metadata) {
            if (container_key == "<xmlattr>" || container_key == "<xmlcomment>")
                continue;
            for (const auto& [key, value] : dc) {
                auto name = local_name(key);
                std::string v = text_of(value);
                if (v.empty())
                    continue;
                if (name == "title")
                    raw.titles.push_back(v);
                else if (name == "creator")
                    raw.creators.push_back(v);
                else if (name == "date")
                    raw.datestamps.push_back(v);
                else if (name == "identifier")
                    raw.dc_identifiers.push_back(v);
                else if (name == "source")
                    raw.sources.push_back(v);
            }
        }
    }
    return raw;
}

std::string read_file(const fs::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw HarvestError("cannot read page file", file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string url_encode(std::string_view s)
{
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_'
            || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 15]);
        }
    }
    return out;
}

std::string list_records_query(const HarvestOptions& options, const std::optional<std::string>& token)
{
    std::string q = "?verb=ListRecords";
    if (token) {
        q += "&resumptionToken=" + url_encode(*token);
        return q;
    }
    q += "&metadataPrefix=" + url_encode(options.metadata_prefix);
    if (options.set)
        q += "&set=" + url_encode(*options.set);
    if (options.from)
        q += "&from=" + url_encode(*options.from);
    if (options.until)
        q += "&until=" + url_encode(*options.until);
    return q;
}

bool looks_like_locator(std::string_view v)
{
    return text::istarts_with(v, "http://") || text::istarts_with(v, "https://") || text::istarts_with(v, "doi:")
           || text::istarts_with(v, "oai:") || try_normalize_arxiv_id(v).has_value();
}

} // namespace

HarvestPage parse_list_records(std::string_view xml, const std::string& label)
{
    pt::ptree doc;
    try {
        std::istringstream in{std::string(xml)};
        pt::read_xml(in, doc);
    } catch (const pt::xml_parser_error& e) {
        throw HarvestError("malformed OAI-PMH page " + label + ": " + e.message(), label);
    }
    const pt::ptree* root = child(doc, "OAI-PMH");
    if (!root)
        throw HarvestError("page " + label + " is not an OAI-PMH response", label);

    HarvestPage page;
    if (const auto* error = child(*root, "error")) {
        auto code = error->get<std::string>("<xmlattr>.code", "");
        if (code == "noRecordsMatch")
            return page;
        throw HarvestError("OAI-PMH error '" + code + "' in " + label + ": " + text_of(*error), label);
    }
    const pt::ptree* list = child(*root, "ListRecords");
    if (!list)
        throw HarvestError("page " + label + " has no ListRecords element", label);

    for (const auto& [key, value] : *list) {
        auto name = local_name(key);
        if (name == "record") {
            page.records.push_back(read_record(value, label));
        } else if (name == "resumptionToken") {
            std::string token = text_of(value);
            if (!token.empty())
                page.resumption_token = token;
        }
    }
    return page;
}

std::vector<fs::path> list_page_files(const fs::path& source)
{
    if (!fs::is_directory(source))
        return {source};
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(source))
        if (entry.is_regular_file() && entry.path().extension() == ".xml")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

HarvestPage load_page_file(const fs::path& file)
{
    return parse_list_records(read_file(file), file.string());
}

std::vector<RawRecord> harvest_files(std::span<const fs::path> pages)
{
    std::vector<RawRecord> records;
    for (const auto& file : pages) {
        HarvestPage page = load_page_file(file);
        for (auto& r : page.records)
            if (!r.deleted)
                records.push_back(std::move(r));
    }
    return records;
}

void harvest_endpoint_pages(const HttpFetch& fetch, const HarvestOptions& options,
                            const std::function<void(HarvestPage&)>& on_page, HarvestReport* report)
{
    HarvestReport local;
    HarvestReport& rep = report ? *report : local;
    auto sleep = options.sleep ? options.sleep : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };

    std::optional<std::string> token = options.resume_token;
    for (;;) {
        std::string query = list_records_query(options, token);
        HttpReply reply;
        auto backoff = options.initial_backoff;
        for (int attempt = 1;; ++attempt) {
            ++rep.requests;
            reply = fetch(query);
            bool retryable = reply.status == 0 || reply.status >= 500;
            if (!retryable)
                break;
            if (attempt >= std::max(1, options.max_attempts)) {
                std::string why = reply.status == 0 ? "transport failure" : "HTTP " + std::to_string(reply.status);
                throw HarvestError("harvest failed after " + std::to_string(attempt) + " attempts (" + why + ")",
                                   query, token);
            }
            std::chrono::milliseconds wait = backoff;
            if (reply.status == 503 && reply.retry_after_seconds)
                wait = std::chrono::seconds(*reply.retry_after_seconds);
            wait = std::min(wait, options.max_backoff);
            ++rep.retries;
            rep.waits.push_back(wait);
            sleep(wait);
            backoff = std::min(backoff * 2, options.max_backoff);
        }
        if (reply.status != 200)
            throw HarvestError("HTTP " + std::to_string(reply.status) + " from OAI-PMH endpoint", query, token);

        HarvestPage page;
        try {
            page = parse_list_records(reply.body, query);
        } catch (const HarvestError& e) {
            throw HarvestError(e.what(), e.page(), token);
        }
        std::optional<std::string> next = page.resumption_token;
        on_page(page);
        if (!next)
            break;
        token = std::move(next);
    }
}

std::vector<RawRecord> harvest_endpoint(const HttpFetch& fetch, const HarvestOptions& options, HarvestReport* report)
{
    std::vector<RawRecord> records;
    harvest_endpoint_pages(
        fetch, options,
        [&](HarvestPage& page) {
            for (auto& r : page.records)
                if (!r.deleted)
                    records.push_back(std::move(r));
        },
        report);
    return records;
}

ArticleRecord parse_record(const RawRecord& raw)
{
    const std::string where = raw.origin.empty() ? std::string() : " (" + raw.origin + ")";
    if (raw.oai_identifier.empty())
        throw RecordRejected("record without identifier" + where);
    auto id = try_normalize_arxiv_id(raw.oai_identifier);
    if (!id)
        throw RecordRejected("unrecognised identifier '" + raw.oai_identifier + "'" + where);

    std::optional<Date> earliest;
    for (const auto& d : raw.datestamps)
        if (auto date = Date::parse_iso(d); date && (!earliest || *date < *earliest))
            earliest = date;
    if (!earliest)
        throw RecordRejected("record " + *id + " has no usable date" + where);

    ArticleRecord rec;
    rec.id = *id;
    rec.first_deposit = *earliest;
    if (is_old_style_id(rec.id)) {
        rec.subfield = archive_prefix(rec.id);
    } else if (!raw.set_specs.empty()) {
        const std::string& spec = raw.set_specs.front();
        auto colon = spec.rfind(':');
        rec.subfield = text::to_lower(colon == std::string::npos ? spec : spec.substr(colon + 1));
    }
    if (rec.subfield.empty())
        throw RecordRejected("record " + *id + " has no subject set" + where);

    if (!raw.titles.empty())
        rec.title = raw.titles.front();
    rec.authors = raw.creators;

    // Journal references arrive in dc:source, or as a dc:identifier that is
    // not a URL, DOI or archive identifier.
    std::vector<std::string> candidates = raw.sources;
    for (const auto& v : raw.dc_identifiers)
        if (!looks_like_locator(v))
            candidates.push_back(v);
    for (const auto& c : candidates) {
        if (auto ref = parse_journal_ref(c)) {
            rec.journal_ref = ref;
            rec.journal_ref_text = c;
            break;
        }
    }
    if (!rec.journal_ref && !candidates.empty())
        rec.journal_ref_text = candidates.front();
    return rec;
}

ArticleRecord parse_record_xml(std::string_view record_xml)
{
    pt::ptree doc;
    try {
        std::istringstream in{std::string(record_xml)};
        pt::read_xml(in, doc);
    } catch (const pt::xml_parser_error& e) {
        throw RecordRejected("malformed record XML: " + e.message());
    }
    const pt::ptree* record = child(doc, "record");
    if (!record)
        throw RecordRejected("no <record> element");
    return parse_record(read_record(*record, "record"));
}

} // namespace citecorr
