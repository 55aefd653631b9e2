#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace citecorr {

class InvalidIdentifier : public std::invalid_argument {
public:
    explicit InvalidIdentifier(const std::string& raw)
        : std::invalid_argument("not an arXiv identifier: '" + raw + "'")
    {
    }
};

/// Canonical form of an arXiv identifier.
///
/// Accepts old-style ids (`hep-th/9901001`, optionally with a subject class
/// such as `math.AG/9901001`) and new-style ids (`0704.0001`, `1501.00001`).
/// A leading `arXiv:` or `oai:arXiv.org:` is dropped, the archive is
/// lowercased, subject classes and version suffixes (`v3`) are removed.
/// Throws InvalidIdentifier when the text matches neither form.
std::string normalize_arxiv_id(std::string_view raw);

std::optional<std::string> try_normalize_arxiv_id(std::string_view raw);

bool is_old_style_id(std::string_view normalized);

/// `hep-th` for `hep-th/9901001`; empty for new-style ids.
std::string archive_prefix(std::string_view normalized);

} // namespace citecorr
