#pragma once

#include "citecorr/corpus_store.hpp"
#include "citecorr/types.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace citecorr {

/// The four components bibliographic linking compares. At least one of
/// `journal` and `first_author` is non-empty; volume, page and year are
/// always present.
struct BibTuple {
    std::string journal;
    std::string first_author; ///< surname
    std::string volume;
    std::string page;
    int year = 0;

    friend bool operator==(const BibTuple&, const BibTuple&) = default;
};

/// Every old-style (`archive/NNNNNNN`) or new-style (`NNNN.NNNN[N]`)
/// identifier in the text, normalized, in order of appearance, without
/// duplicates.
std::vector<std::string> extract_identifiers(std::string_view reference);

std::optional<BibTuple> extract_bib_tuple(std::string_view reference);

enum class LinkStatus { identifier, bibliographic, ambiguous, unresolved, self };

std::string_view to_string(LinkStatus s);

struct LinkOutcome {
    LinkStatus status = LinkStatus::unresolved;
    std::optional<CitationLink> link;
    /// For bibliographic outcomes: whether the journal title or the first
    /// author resolved the tuple.
    bool matched_by_author = false;
};

/// Resolves references against a frozen view of the store's articles.
/// Identifier links take precedence; a bibliographic tuple is tried on the
/// journal title first, then the first author, and must match exactly one
/// article on all four components.
class CitationLinker {
public:
    explicit CitationLinker(const CorpusStore& store);

    LinkOutcome resolve(const ReferenceString& ref) const;
    std::optional<CitationLink> link_reference(const ReferenceString& ref) const { return resolve(ref).link; }

private:
    using Key = std::tuple<std::string, std::string, std::string, int>;

    const CorpusStore& store_;
    std::map<Key, std::vector<std::string>> by_journal_;
    std::map<Key, std::vector<std::string>> by_author_;
};

struct LinkStats {
    std::size_t references = 0;
    std::size_t identifier = 0;    ///< references resolved by identifier
    std::size_t bibliographic = 0; ///< references resolved by tuple
    std::size_t by_journal = 0;
    std::size_t by_author = 0;
    std::size_t ambiguous = 0;
    std::size_t unresolved = 0;
    std::size_t self = 0;
    std::size_t edges = 0;              ///< distinct (citing, cited) pairs in this batch
    std::size_t edges_identifier = 0;
    std::size_t edges_bibliographic = 0;
    std::size_t edges_new = 0;          ///< edges not already in the store
};

struct GraphBuild {
    LinkStats stats;
    std::vector<CitationLink> changed; ///< links whose stored state changed
};

/// Links every reference and unions the resulting edges into the store.
/// An edge reached by both methods is recorded as an identifier link.
GraphBuild build_graph(CorpusStore& store, std::span<const ReferenceString> refs);

/// Reads one reference list: one reference per non-blank line, indexed
/// from 0. The citing id comes from the file name with '_' for '/', so
/// "hep-th_9901001.txt" and "0704.0001" both work. Throws
/// std::runtime_error when the name is not an identifier.
std::vector<ReferenceString> read_reference_file(const std::filesystem::path& file);

/// read_reference_file over every regular file in `dir`, by file name.
std::vector<ReferenceString> read_reference_dir(const std::filesystem::path& dir);

/// Inlink count; throws UnknownArticle.
inline std::size_t citation_impact(const CorpusStore& store, std::string_view id)
{
    return store.citation_impact(id);
}

} // namespace citecorr
