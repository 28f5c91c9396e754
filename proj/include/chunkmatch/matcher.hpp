#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chunkmatch/backend.hpp"
#include "chunkmatch/textpipe.hpp"

namespace chunkmatch {

enum class AdvancePolicy { skip_matched, next_word };

const char* to_string(AdvancePolicy policy);

struct MatcherConfig {
  std::size_t max_side = 3;  // max words each side of the pivot; >= 1
  bool skip_stopword_pivots = false;
  bool stemmed_pass_enabled = true;
  AdvancePolicy advance_policy = AdvancePolicy::skip_matched;
  StopwordSet stopwords;  // consulted only when skip_stopword_pivots is set
};

/// One successful pivot expansion: the largest window around the pivot that
/// the backend located, with the hits of the final successful query.
struct WindowMatch {
  std::size_t sentence_idx = 0;
  std::size_t pivot_word_idx = 0;
  std::size_t left = 0;   // inclusive word index within the sentence
  std::size_t right = 0;  // inclusive
  MatchMode mode = MatchMode::exact;
  std::vector<SourceHit> hits;  // nonempty

  std::size_t width() const { return right - left + 1; }
};

struct DocumentMatches {
  std::vector<WindowMatch> matches;
  bool degraded = false;  // some backend queries failed and were treated as not-found
};

/// Expands a window around one pivot: start at pivot +/- 1 (the whole
/// sentence when it has fewer than 3 tokens), grow one word per available
/// side per step while the backend keeps locating the phrase, cap at
/// pivot +/- max_side. Returns nothing when the initial window is absent.
/// Backend errors count as not-found and set *degraded when given.
std::optional<WindowMatch> match_pivot(const Sentence& sentence, std::size_t pivot_idx,
                                       MatchMode mode, PhraseSearcher& searcher,
                                       const MatcherConfig& cfg, bool* degraded = nullptr);

/// Exact pass over all pivots left to right, then (when enabled) a stemmed
/// pass over pivots the exact pass left uncovered.
std::vector<WindowMatch> match_sentence(const Sentence& sentence, PhraseSearcher& searcher,
                                        const MatcherConfig& cfg, bool* degraded = nullptr);

/// Sentence-by-sentence traversal of the whole document. Each sentence's
/// result depends only on that sentence and the searcher.
DocumentMatches match_document(const AnalyzedDocument& doc, PhraseSearcher& searcher,
                               const MatcherConfig& cfg);

}  // namespace chunkmatch
