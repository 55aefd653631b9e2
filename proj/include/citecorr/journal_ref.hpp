#pragma once

#include "citecorr/types.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace citecorr {

/// Parses conventional journal-reference forms into (journal, volume, page,
/// year); absent unless all four components are recoverable.
///
///   Phys. Rev. D 62 (2000) 043007
///   Phys.Rev. D62 (2000) 043007
///   Nucl. Phys. B 574, 169 (2000)
///   Phys.Rev.D62:043007,2000
///   Phys. Lett. B 480 193 (2000)
///   2000 Phys. Rev. D 62 043007
///
/// Page ranges keep the first page. A series letter glued to the volume
/// ("D62") is moved onto the journal title.
std::optional<JournalRef> parse_journal_ref(std::string_view text);

/// Finds the first journal reference embedded in a longer string, such as
/// a reference-list entry. `start` receives the offset where the journal
/// title begins.
std::optional<JournalRef> find_journal_ref(std::string_view text, std::size_t* start = nullptr);

/// Comparison keys. Titles fold case and drop whitespace and punctuation;
/// volumes drop leading zeros; pages drop one leading letter and leading
/// zeros ("L017" -> "17").
std::string fold_journal_title(std::string_view title);
std::string normalize_volume(std::string_view volume);
std::string normalize_page(std::string_view page);

/// "Smith" from "Smith, J.", "J. Smith" or "J.M. Smith".
std::string author_surname(std::string_view author);

} // namespace citecorr
