#include "chunkmatch/matcher.hpp"

#include "chunkmatch/errors.hpp"

namespace chunkmatch {

const char* to_string(AdvancePolicy policy) {
  return policy == AdvancePolicy::skip_matched ? "skip_matched" : "next_word";
}

namespace {

std::vector<std::string> window_phrase(const Sentence& sentence, std::size_t left,
                                       std::size_t right, MatchMode mode) {
  std::vector<std::string> phrase;
  phrase.reserve(right - left + 1);
  for (std::size_t i = left; i <= right; ++i) {
    const Token& tok = sentence.tokens[i];
    phrase.push_back(mode == MatchMode::exact ? tok.normalized : tok.stem);
  }
  return phrase;
}

// Backend failures degrade to "not found" so partial reports stay useful.
std::vector<SourceHit> locate_window(const Sentence& sentence, std::size_t left,
                                     std::size_t right, MatchMode mode,
                                     PhraseSearcher& searcher, bool* degraded) {
  std::vector<std::string> phrase = window_phrase(sentence, left, right, mode);
  try {
    return searcher.locate(phrase, mode);
  } catch (const BudgetError&) {
    if (degraded) *degraded = true;
  } catch (const TransportError&) {
    if (degraded) *degraded = true;
  }
  return {};
}

}  // namespace

std::optional<WindowMatch> match_pivot(const Sentence& sentence, std::size_t pivot_idx,
                                       MatchMode mode, PhraseSearcher& searcher,
                                       const MatcherConfig& cfg, bool* degraded) {
  const std::size_t n = sentence.tokens.size();
  if (pivot_idx >= n) throw ParameterError("match_pivot: pivot index out of range");
  if (cfg.max_side < 1) throw ParameterError("max_side must be >= 1");

  const std::size_t lo_cap = pivot_idx >= cfg.max_side ? pivot_idx - cfg.max_side : 0;
  const std::size_t hi_cap = std::min(n - 1, pivot_idx + cfg.max_side);

  std::size_t left, right;
  if (n < 3) {
    left = 0;
    right = n - 1;
  } else {
    left = pivot_idx > 0 ? pivot_idx - 1 : 0;
    right = std::min(n - 1, pivot_idx + 1);
  }

  std::vector<SourceHit> hits = locate_window(sentence, left, right, mode, searcher, degraded);
  if (hits.empty()) return std::nullopt;

  // Grow one word on each side that still has room; the last located
  // window wins, no retries at intermediate widths.
  while (true) {
    std::size_t next_left = left > lo_cap ? left - 1 : left;
    std::size_t next_right = right < hi_cap ? right + 1 : right;
    if (next_left == left && next_right == right) break;
    std::vector<SourceHit> grown =
        locate_window(sentence, next_left, next_right, mode, searcher, degraded);
    if (grown.empty()) break;
    left = next_left;
    right = next_right;
    hits = std::move(grown);
  }

  WindowMatch match;
  match.sentence_idx = sentence.sentence_idx;
  match.pivot_word_idx = pivot_idx;
  match.left = left;
  match.right = right;
  match.mode = mode;
  match.hits = std::move(hits);
  return match;
}

std::vector<WindowMatch> match_sentence(const Sentence& sentence, PhraseSearcher& searcher,
                                        const MatcherConfig& cfg, bool* degraded) {
  const std::size_t n = sentence.tokens.size();
  std::vector<WindowMatch> matches;
  if (n == 0) return matches;

  std::vector<bool> exact_covered(n, false);

  auto is_stopword_pivot = [&](std::size_t idx) {
    return cfg.skip_stopword_pivots &&
           cfg.stopwords.count(sentence.tokens[idx].normalized) != 0;
  };

  auto run_pass = [&](MatchMode mode) {
    std::size_t pivot = 0;
    while (pivot < n) {
      if (mode == MatchMode::stemmed && exact_covered[pivot]) {
        ++pivot;
        continue;
      }
      if (is_stopword_pivot(pivot)) {
        ++pivot;
        continue;
      }
      std::optional<WindowMatch> m = match_pivot(sentence, pivot, mode, searcher, cfg, degraded);
      if (!m) {
        ++pivot;
        continue;
      }
      if (mode == MatchMode::exact)
        for (std::size_t i = m->left; i <= m->right; ++i) exact_covered[i] = true;
      std::size_t matched_right = m->right;
      matches.push_back(std::move(*m));
      pivot = cfg.advance_policy == AdvancePolicy::skip_matched ? matched_right + 1 : pivot + 1;
    }
  };

  run_pass(MatchMode::exact);
  if (cfg.stemmed_pass_enabled) run_pass(MatchMode::stemmed);
  return matches;
}

DocumentMatches match_document(const AnalyzedDocument& doc, PhraseSearcher& searcher,
                               const MatcherConfig& cfg) {
  DocumentMatches result;
  for (const Sentence& sentence : doc.sentences) {
    std::vector<WindowMatch> ms = match_sentence(sentence, searcher, cfg, &result.degraded);
    for (WindowMatch& m : ms) result.matches.push_back(std::move(m));
  }
  return result;
}

}  // namespace chunkmatch
