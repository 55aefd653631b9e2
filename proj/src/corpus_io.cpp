#include "citecorr/corpus_io.hpp"

#include "text_util.hpp"

#include <json.hpp>

#include <charconv>
#include <functional>
#include <fstream>

namespace citecorr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kEventsHeader = "article_id,day,host_domain,format";
constexpr const char* kLinksHeader = "citing,cited,method";

std::vector<std::string_view> csv_fields(std::string_view line, std::size_t expected, const char* what)
{
    auto fields = text::split(text::trim(line), ',');
    if (fields.size() != expected)
        throw CorpusIoError(std::string("malformed ") + what + " row: '" + std::string(line) + "'");
    return fields;
}

void replay(const fs::path& file, const std::function<void(std::string_view)>& apply)
{
    std::ifstream in(file);
    if (!in)
        return;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty())
            continue;
        try {
            apply(line);
        } catch (const std::exception& e) {
            throw CorpusIoError(file.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

template <typename T, typename Fn>
void append_lines(const fs::path& file, std::span<const T> items, Fn to_line, const char* header)
{
    if (items.empty())
        return;
    bool fresh = !fs::exists(file);
    std::ofstream out(file, std::ios::app);
    if (!out)
        throw CorpusIoError("cannot append to " + file.string());
    if (fresh && header)
        out << header << '\n';
    for (const auto& item : items)
        out << to_line(item) << '\n';
    if (!out)
        throw CorpusIoError("write failed: " + file.string());
}

template <typename T, typename Fn>
void write_atomically(const fs::path& file, const std::vector<T>& items, Fn to_line, const char* header)
{
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw CorpusIoError("cannot write " + tmp.string());
        if (header)
            out << header << '\n';
        for (const auto& item : items)
            out << to_line(item) << '\n';
        if (!out)
            throw CorpusIoError("write failed: " + tmp.string());
    }
    fs::rename(tmp, file);
}

} // namespace

std::string article_to_line(const ArticleRecord& a)
{
    json j;
    j["id"] = a.id;
    j["date"] = a.first_deposit.compact();
    j["subfield"] = a.subfield;
    j["title"] = a.title;
    j["authors"] = a.authors;
    if (a.journal_ref) {
        j["journal_ref"] = {{"journal", a.journal_ref->journal},
                            {"volume", a.journal_ref->volume},
                            {"page", a.journal_ref->page},
                            {"year", a.journal_ref->year}};
    } else {
        j["journal_ref"] = nullptr;
    }
    j["journal_ref_text"] = a.journal_ref_text;
    return j.dump();
}

ArticleRecord article_from_line(std::string_view line)
try {
    json j = json::parse(line);
    ArticleRecord a;
    a.id = j.at("id").get<std::string>();
    auto date = Date::parse_compact(j.at("date").get<std::string>());
    if (!date)
        throw CorpusIoError("bad date for article " + a.id);
    a.first_deposit = *date;
    a.subfield = j.at("subfield").get<std::string>();
    a.title = j.value("title", "");
    a.authors = j.value("authors", std::vector<std::string>{});
    if (auto it = j.find("journal_ref"); it != j.end() && !it->is_null()) {
        a.journal_ref = JournalRef{it->at("journal").get<std::string>(), it->at("volume").get<std::string>(),
                                   it->at("page").get<std::string>(), it->at("year").get<int>()};
    }
    a.journal_ref_text = j.value("journal_ref_text", "");
    return a;
} catch (const json::exception& e) {
    throw CorpusIoError(std::string("malformed article row: ") + e.what());
}

std::string event_to_line(const DownloadEvent& e)
{
    std::string s = e.article_id;
    s += ',';
    s += e.day.compact();
    s += ',';
    s += e.host_domain;
    s += ',';
    s += to_string(e.format);
    return s;
}

DownloadEvent event_from_line(std::string_view line)
{
    auto f = csv_fields(line, 4, "event");
    auto day = Date::parse_compact(f[1]);
    auto format = parse_download_format(f[3]);
    if (!day || !format || f[0].empty())
        throw CorpusIoError("malformed event row: '" + std::string(line) + "'");
    return {std::string(f[0]), *day, std::string(f[2]), *format};
}

std::string link_to_line(const CitationLink& l)
{
    return l.citing_id + "," + l.cited_id + "," + std::string(to_string(l.method));
}

CitationLink link_from_line(std::string_view line)
{
    auto f = csv_fields(line, 3, "link");
    auto method = parse_link_method(f[2]);
    if (!method || f[0].empty() || f[1].empty())
        throw CorpusIoError("malformed link row: '" + std::string(line) + "'");
    return {std::string(f[0]), std::string(f[1]), *method, std::nullopt};
}

std::string reference_to_line(const ReferenceString& r)
{
    return json{{"citing", r.citing_id}, {"index", r.index}, {"raw", r.raw}}.dump();
}

ReferenceString reference_from_line(std::string_view line)
try {
    json j = json::parse(line);
    return {j.at("citing").get<std::string>(), j.at("index").get<int>(), j.at("raw").get<std::string>()};
} catch (const json::exception& e) {
    throw CorpusIoError(std::string("malformed reference row: ") + e.what());
}

CorpusStore load_corpus(const fs::path& dir)
{
    CorpusStore store;
    replay(dir / corpus_files::articles, [&](std::string_view line) { store.upsert_article(article_from_line(line)); });
    replay(dir / corpus_files::events, [&](std::string_view line) {
        if (text::trim(line) == kEventsHeader)
            return;
        DownloadEvent e = event_from_line(line);
        store.record_downloads(std::span(&e, 1));
    });
    replay(dir / corpus_files::links, [&](std::string_view line) {
        if (text::trim(line) == kLinksHeader)
            return;
        CitationLink l = link_from_line(line);
        store.record_links(std::span(&l, 1));
    });
    replay(dir / corpus_files::references, [&](std::string_view line) {
        ReferenceString r = reference_from_line(line);
        store.record_references(std::span(&r, 1));
    });
    return store;
}

void write_snapshot(const CorpusStore& store, const fs::path& dir)
{
    fs::create_directories(dir);
    std::vector<ArticleRecord> articles;
    for (const auto& [id, a] : store.articles())
        articles.push_back(a);
    write_atomically(dir / corpus_files::articles, articles, article_to_line, nullptr);
    write_atomically(dir / corpus_files::events, store.events(), event_to_line, kEventsHeader);
    write_atomically(dir / corpus_files::links, store.links(), link_to_line, kLinksHeader);
    write_atomically(dir / corpus_files::references, store.references(), reference_to_line, nullptr);
}

void append_articles(const fs::path& dir, std::span<const ArticleRecord> articles)
{
    fs::create_directories(dir);
    append_lines(dir / corpus_files::articles, articles, article_to_line, nullptr);
}

void append_events(const fs::path& dir, std::span<const DownloadEvent> events)
{
    fs::create_directories(dir);
    append_lines(dir / corpus_files::events, events, event_to_line, kEventsHeader);
}

void append_links(const fs::path& dir, std::span<const CitationLink> links)
{
    fs::create_directories(dir);
    append_lines(dir / corpus_files::links, links, link_to_line, kLinksHeader);
}

void append_references(const fs::path& dir, std::span<const ReferenceString> refs)
{
    fs::create_directories(dir);
    append_lines(dir / corpus_files::references, refs, reference_to_line, nullptr);
}

} // namespace citecorr
