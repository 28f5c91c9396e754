#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "chunkmatch/textpipe.hpp"

namespace chunkmatch {

enum class MatchMode { exact, stemmed };

const char* to_string(MatchMode mode);

/// One indexed reference document.
struct SourceRecord {
  std::string source_id;
  std::string origin;
  std::uint64_t total_words = 0;
};

/// One term occurrence: position in the source's flattened normalized
/// token stream, plus enough location data to report it.
struct Posting {
  std::uint32_t source_ord = 0;  // index into the source catalog
  std::uint32_t word_pos = 0;    // 0-based global position in that source
  std::uint32_t sentence_idx = 0;
  std::uint32_t line_no = 1;
};

struct PhraseHit {
  std::string source_id;
  std::size_t source_ord = 0;
  std::size_t start_word_pos = 0;
  std::size_t sentence_idx = 0;
  std::size_t line_no = 1;
};

/// Positional inverted index over a reference corpus. Two parallel term
/// tables are kept: one over normalized forms, one over Porter stems.
/// Immutable after build/load; concurrent readers are safe.
///
/// On-disk format (all integers little-endian):
///   magic "CHKM" | u16 version | u16 reserved
///   u32 source count | per source: str source_id, str origin, u64 total_words
///   u64 exact term count | per term: str term, u64 n, n x posting
///   u64 stem term count  | same layout
/// where str = u32 length + bytes and posting = u32 source_ord, u32 word_pos,
/// u32 sentence_idx, u32 line_no. Terms are written in sorted order, so index
/// bytes are reproducible for a fixed document order.
class ReferenceIndex {
 public:
  static constexpr std::uint16_t kFormatVersion = 1;

  /// Indexes the given documents. Throws ParameterError on duplicate doc_id.
  static ReferenceIndex build(const std::vector<AnalyzedDocument>& docs);

  /// All positions where the phrase occurs as consecutive tokens within a
  /// single source, ordered by (source_id, position). Exact mode expects
  /// normalized tokens, stemmed mode expects stems.
  std::vector<PhraseHit> phrase_query(std::span<const std::string> phrase,
                                      MatchMode mode) const;

  void save(const std::string& path) const;
  static ReferenceIndex load(const std::string& path);

  const std::vector<SourceRecord>& sources() const { return catalog_; }
  const SourceRecord& source(std::size_t ord) const { return catalog_.at(ord); }
  std::size_t term_count(MatchMode mode) const {
    return (mode == MatchMode::exact ? exact_terms_ : stem_terms_).size();
  }

 private:
  using TermTable = std::map<std::string, std::vector<Posting>>;

  const TermTable& table(MatchMode mode) const {
    return mode == MatchMode::exact ? exact_terms_ : stem_terms_;
  }

  std::vector<SourceRecord> catalog_;
  std::vector<std::uint32_t> ord_rank_;  // catalog ordinal -> source_id rank
  TermTable exact_terms_;
  TermTable stem_terms_;

  void finalize();
};

}  // namespace chunkmatch
