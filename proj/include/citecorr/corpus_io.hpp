#pragma once

#include "citecorr/corpus_store.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

namespace citecorr {

class CorpusIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Data directory layout. Each file is one record per line and is only ever
// appended to during ingestion; replaying them rebuilds the store.
//
//   articles.jsonl     {"id","date":"YYYYMMDD","subfield","title","authors",
//                       "journal_ref":{journal,volume,page,year}|null,
//                       "journal_ref_text"}
//   events.csv         article_id,day,host_domain,format
//   links.csv          citing,cited,method
//   references.jsonl   {"citing","index","raw"}
namespace corpus_files {
inline constexpr const char* articles = "articles.jsonl";
inline constexpr const char* events = "events.csv";
inline constexpr const char* links = "links.csv";
inline constexpr const char* references = "references.jsonl";
} // namespace corpus_files

std::string article_to_line(const ArticleRecord& a);
/// Throws CorpusIoError on malformed input.
ArticleRecord article_from_line(std::string_view line);

std::string event_to_line(const DownloadEvent& e);
DownloadEvent event_from_line(std::string_view line);

std::string link_to_line(const CitationLink& l);
CitationLink link_from_line(std::string_view line);

std::string reference_to_line(const ReferenceString& r);
ReferenceString reference_from_line(std::string_view line);

/// Replays every file present in `dir` into a fresh store. Missing files
/// are treated as empty. Throws CorpusIoError naming file and line.
CorpusStore load_corpus(const std::filesystem::path& dir);

/// Writes a compacted, sorted snapshot of the store into `dir`, replacing
/// the files atomically (write to temp, then rename).
void write_snapshot(const CorpusStore& store, const std::filesystem::path& dir);

void append_articles(const std::filesystem::path& dir, std::span<const ArticleRecord> articles);
void append_events(const std::filesystem::path& dir, std::span<const DownloadEvent> events);
void append_links(const std::filesystem::path& dir, std::span<const CitationLink> links);
void append_references(const std::filesystem::path& dir, std::span<const ReferenceString> refs);

} // namespace citecorr
