#include "citecorr/citation_linker.hpp"

#include "citecorr/arxiv_id.hpp"
#include "citecorr/journal_ref.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <fstream>
#include <regex>

namespace citecorr {

namespace {

const std::regex& identifier_pattern()
{
    // Group 1: old-style archive/number, group 2: new-style number.
    static const std::regex re(R"(([A-Za-z]+(?:-[A-Za-z]+)*(?:\.[A-Za-z]{2})?/\d{7}(?:v\d+)?)(?!\d)|(?:^|[^\d.])(\d{4}\.\d{4,5}(?:v\d+)?)(?![\d]))");
    return re;
}

// Text before the first separator that ends the first author's name.
std::string_view first_author_segment(std::string_view authors)
{
    std::size_t end = authors.size();
    for (std::string_view sep : {",", ";", "&", " and ", " et al"}) {
        auto pos = authors.find(sep);
        if (pos != std::string_view::npos)
            end = std::min(end, pos);
    }
    return authors.substr(0, end);
}

} // namespace

std::string_view to_string(LinkStatus s)
{
    switch (s) {
    case LinkStatus::identifier: return "identifier";
    case LinkStatus::bibliographic: return "bibliographic";
    case LinkStatus::ambiguous: return "ambiguous";
    case LinkStatus::unresolved: return "unresolved";
    case LinkStatus::self: return "self";
    }
    return "unresolved";
}

std::vector<std::string> extract_identifiers(std::string_view reference)
{
    std::vector<std::string> ids;
    std::string s(reference);
    for (std::sregex_iterator it(s.begin(), s.end(), identifier_pattern()), end; it != end; ++it) {
        const auto& m = *it;
        std::string candidate = m[1].matched ? m[1].str() : m[2].str();
        auto id = try_normalize_arxiv_id(candidate);
        if (id && std::find(ids.begin(), ids.end(), *id) == ids.end())
            ids.push_back(std::move(*id));
    }
    return ids;
}

std::optional<BibTuple> extract_bib_tuple(std::string_view reference)
{
    std::size_t start = 0;
    auto ref = find_journal_ref(reference, &start);
    if (!ref)
        return std::nullopt;
    BibTuple tuple;
    tuple.journal = ref->journal;
    tuple.volume = ref->volume;
    tuple.page = ref->page;
    tuple.year = ref->year;
    tuple.first_author = author_surname(first_author_segment(text::trim(reference.substr(0, start))));
    if (tuple.journal.empty() && tuple.first_author.empty())
        return std::nullopt;
    return tuple;
}

CitationLinker::CitationLinker(const CorpusStore& store) : store_(store)
{
    for (const auto& [id, article] : store.articles()) {
        if (!article.journal_ref)
            continue;
        const JournalRef& j = *article.journal_ref;
        std::string volume = normalize_volume(j.volume);
        std::string page = normalize_page(j.page);
        by_journal_[{fold_journal_title(j.journal), volume, page, j.year}].push_back(id);
        if (!article.authors.empty()) {
            std::string surname = text::to_lower(author_surname(article.authors.front()));
            if (!surname.empty())
                by_author_[{surname, volume, page, j.year}].push_back(id);
        }
    }
}

LinkOutcome CitationLinker::resolve(const ReferenceString& ref) const
{
    auto make_link = [&](const std::string& cited, LinkMethod method) {
        return CitationLink{ref.citing_id, cited, method, store_.latency(ref.citing_id, cited)};
    };

    bool cites_self = false;
    for (const auto& id : extract_identifiers(ref.raw)) {
        if (id == ref.citing_id) {
            cites_self = true;
            continue;
        }
        if (store_.find_article(id))
            return {LinkStatus::identifier, make_link(id, LinkMethod::identifier), false};
    }
    if (cites_self)
        return {LinkStatus::self, std::nullopt, false};

    auto tuple = extract_bib_tuple(ref.raw);
    if (!tuple)
        return {LinkStatus::unresolved, std::nullopt, false};

    std::string volume = normalize_volume(tuple->volume);
    std::string page = normalize_page(tuple->page);
    auto try_index = [&](const std::map<Key, std::vector<std::string>>& index, std::string name,
                         bool by_author) -> std::optional<LinkOutcome> {
        if (name.empty())
            return std::nullopt;
        auto it = index.find({std::move(name), volume, page, tuple->year});
        if (it == index.end())
            return std::nullopt;
        if (it->second.size() > 1)
            return LinkOutcome{LinkStatus::ambiguous, std::nullopt, by_author};
        const std::string& cited = it->second.front();
        if (cited == ref.citing_id)
            return LinkOutcome{LinkStatus::self, std::nullopt, by_author};
        return LinkOutcome{LinkStatus::bibliographic, make_link(cited, LinkMethod::bibliographic), by_author};
    };

    if (auto r = try_index(by_journal_, fold_journal_title(tuple->journal), false))
        return *r;
    if (auto r = try_index(by_author_, text::to_lower(tuple->first_author), true))
        return *r;
    return {LinkStatus::unresolved, std::nullopt, false};
}

GraphBuild build_graph(CorpusStore& store, std::span<const ReferenceString> refs)
{
    GraphBuild result;
    LinkStats& stats = result.stats;
    std::map<std::pair<std::string, std::string>, LinkMethod> edges;
    {
        CitationLinker linker(store);
        for (const auto& ref : refs) {
            ++stats.references;
            LinkOutcome outcome = linker.resolve(ref);
            switch (outcome.status) {
            case LinkStatus::identifier: ++stats.identifier; break;
            case LinkStatus::bibliographic:
                ++stats.bibliographic;
                ++(outcome.matched_by_author ? stats.by_author : stats.by_journal);
                break;
            case LinkStatus::ambiguous: ++stats.ambiguous; break;
            case LinkStatus::unresolved: ++stats.unresolved; break;
            case LinkStatus::self: ++stats.self; break;
            }
            if (!outcome.link)
                continue;
            auto [it, inserted] = edges.try_emplace({outcome.link->citing_id, outcome.link->cited_id},
                                                    outcome.link->method);
            if (!inserted && outcome.link->method == LinkMethod::identifier)
                it->second = LinkMethod::identifier;
        }
    }

    std::vector<CitationLink> links;
    links.reserve(edges.size());
    for (const auto& [key, method] : edges) {
        links.push_back({key.first, key.second, method, std::nullopt});
        ++(method == LinkMethod::identifier ? stats.edges_identifier : stats.edges_bibliographic);
    }
    stats.edges = links.size();
    std::size_t before = store.link_count();
    result.changed = store.insert_links(links);
    stats.edges_new = store.link_count() - before;
    return result;
}

std::vector<ReferenceString> read_reference_file(const std::filesystem::path& file)
{
    auto id_from = [](std::string name) {
        std::replace(name.begin(), name.end(), '_', '/');
        return try_normalize_arxiv_id(name);
    };
    auto id = id_from(file.filename().string());
    if (!id)
        id = id_from(file.stem().string());
    if (!id)
        throw std::runtime_error("reference file name is not an identifier: " + file.string());

    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + file.string());
    std::vector<ReferenceString> refs;
    std::string line;
    int index = 0;
    while (std::getline(in, line)) {
        std::string_view raw = text::trim(line);
        if (raw.empty())
            continue;
        refs.push_back({*id, index++, std::string(raw)});
    }
    return refs;
}

std::vector<ReferenceString> read_reference_dir(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file())
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<ReferenceString> refs;
    for (const auto& f : files) {
        auto part = read_reference_file(f);
        refs.insert(refs.end(), part.begin(), part.end());
    }
    return refs;
}

} // namespace citecorr
