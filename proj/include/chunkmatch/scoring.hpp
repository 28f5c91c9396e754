#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "chunkmatch/matcher.hpp"

namespace chunkmatch {

/// Words copied from one origin within one sentence. A word counts once per
/// origin even when several windows from that origin overlap it; positions
/// already credited to an origin's exact matches are not re-credited to its
/// stemmed ones.
struct Attribution {
  std::string origin;
  std::size_t words_copied = 0;
  MatchMode mode = MatchMode::exact;
  bool multi_origin = false;  // came from windows attributed to several origins at once
};

struct SentenceReport {
  std::size_t sentence_idx = 0;
  std::size_t page_no = 1;
  std::size_t first_line = 1;
  std::size_t last_line = 1;
  std::size_t word_count = 0;
  std::string text;  // surface forms, for rendering
  std::vector<std::size_t> covered_positions;  // sorted word indices
  std::vector<std::size_t> stemmed_positions;  // subset covered by stemmed windows
  double coverage = 0.0;
  bool flagged = false;
  std::vector<Attribution> attributions;
};

struct DocumentReport {
  std::string doc_id;
  std::vector<SentenceReport> sentences;  // one per sentence, in order
  std::size_t total_words = 0;
  std::size_t covered_words = 0;
  double plagiarism_percentage = 0.0;   // 100 * covered / total
  double flagged_sentence_fraction = 0.0;
  bool degraded = false;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::map<std::string, std::size_t> per_source;  // origin -> words copied
};

struct ScoringConfig {
  double sentence_threshold = 0.5;  // flag at coverage >= threshold
  std::vector<std::pair<std::string, std::string>> config_echo;
};

/// Folds window matches into per-sentence coverage and the document
/// plagiarism percentage. Throws ParameterError when a match references a
/// sentence or span outside the document.
DocumentReport score(const AnalyzedDocument& doc, const DocumentMatches& matches,
                     const ScoringConfig& cfg = {});

enum class ReportFormat { text, json, html };

/// Writes the report in the chosen format; JSON output is byte-stable for
/// identical reports. Returns the number of bytes written.
std::size_t render(const DocumentReport& report, ReportFormat format, std::ostream& out);

std::string render_to_string(const DocumentReport& report, ReportFormat format);

/// Inverse of the JSON render, used by the evaluate command and round-trip
/// tests. Throws CorruptFileError on malformed input.
DocumentReport parse_report_json(const std::string& json_text);

}  // namespace chunkmatch
