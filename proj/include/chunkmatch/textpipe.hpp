#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

namespace chunkmatch {

/// A document as handed to the pipeline: raw bytes plus identity.
struct RawDocument {
  std::string doc_id;  // nonempty, unique within a run
  std::string text;    // may be empty
  std::string origin;  // file path or URL
};

/// Half-open byte range [begin, end) into the raw text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const CharSpan&) const = default;
};

struct Token {
  std::string surface;     // exact substring of the raw text
  std::string normalized;  // lowercased, apostrophes stripped; never empty
  std::string stem;        // Porter stem of normalized
  std::size_t sentence_idx = 0;
  std::size_t word_idx = 0;  // 0-based within the sentence
  std::size_t line_no = 1;   // 1-based line in the raw text
  std::size_t page_no = 1;   // 1-based page (form-feed delimited)
  CharSpan char_span;
};

struct Sentence {
  std::vector<Token> tokens;  // never empty, word_idx contiguous from 0
  std::size_t sentence_idx = 0;
  std::size_t page_no = 1;
  std::size_t first_line = 1;
  std::size_t last_line = 1;
};

struct AnalyzedDocument {
  std::string doc_id;
  std::string origin;
  std::vector<Sentence> sentences;
  std::size_t page_count = 1;
  std::size_t total_words = 0;  // sum of sentence token counts
};

struct PipelineConfig {
  std::string sentence_terminators = ".!?";
  std::string stopword_path;  // optional; empty = built-in list only
};

/// Splits raw text into pages, sentences and tokens. Deterministic; never
/// throws on content — pathological input yields an empty document.
AnalyzedDocument analyze(const RawDocument& doc, const PipelineConfig& cfg = {});

/// Lowercases and strips apostrophes from a token surface. Idempotent.
std::string normalize_word(const std::string& surface);

using StopwordSet = std::unordered_set<std::string>;

/// Small built-in English stopword list (normalized forms).
const StopwordSet& default_stopwords();

/// One word per line, '#' comments allowed; merged with the built-in list.
StopwordSet load_stopwords(const std::string& path);

}  // namespace chunkmatch
