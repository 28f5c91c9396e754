#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chunkmatch/refindex.hpp"
#include "chunkmatch/textpipe.hpp"

// Independent reference implementations the real code is checked against.
namespace oracles {

struct Occurrence {
  std::string doc_id;
  std::size_t start = 0;

  bool operator==(const Occurrence&) const = default;
  auto operator<=>(const Occurrence&) const = default;
};

inline std::vector<std::string> flat_terms(const chunkmatch::AnalyzedDocument& d,
                                           chunkmatch::MatchMode mode) {
  std::vector<std::string> out;
  for (const auto& s : d.sentences)
    for (const auto& t : s.tokens)
      out.push_back(mode == chunkmatch::MatchMode::exact ? t.normalized : t.stem);
  return out;
}

/// Brute force: every start position where the phrase occurs as consecutive
/// tokens of a document's flattened term stream.
inline std::vector<Occurrence> scan_phrase(
    const std::vector<chunkmatch::AnalyzedDocument>& docs,
    std::span<const std::string> phrase, chunkmatch::MatchMode mode) {
  std::vector<Occurrence> out;
  if (phrase.empty()) return out;
  for (const auto& d : docs) {
    const std::vector<std::string> terms = flat_terms(d, mode);
    if (terms.size() < phrase.size()) continue;
    for (std::size_t s = 0; s + phrase.size() <= terms.size(); ++s) {
      bool match = true;
      for (std::size_t i = 0; i < phrase.size(); ++i)
        if (terms[s + i] != phrase[i]) {
          match = false;
          break;
        }
      if (match) out.push_back({d.doc_id, s});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct WindowSpan {
  std::size_t left = 0;
  std::size_t right = 0;

  bool operator==(const WindowSpan&) const = default;
};

/// Growth-path oracle: start at pivot +/- 1 (whole sentence under 3 tokens),
/// widen one word per side per step while `exists` holds, never beyond
/// pivot +/- max_side or the sentence bounds. No result when the initial
/// window is absent.
template <typename ExistsFn>
std::optional<WindowSpan> grow_window(std::size_t n_tokens, std::size_t pivot,
                                      std::size_t max_side, ExistsFn exists) {
  if (n_tokens == 0 || pivot >= n_tokens) return std::nullopt;
  std::size_t left, right;
  if (n_tokens < 3) {
    left = 0;
    right = n_tokens - 1;
  } else {
    left = pivot > 0 ? pivot - 1 : 0;
    right = std::min(pivot + 1, n_tokens - 1);
  }
  const std::size_t lo = pivot > max_side ? pivot - max_side : 0;
  const std::size_t hi = std::min(pivot + max_side, n_tokens - 1);
  if (!exists(left, right)) return std::nullopt;
  for (;;) {
    const std::size_t next_left = left > lo ? left - 1 : left;
    const std::size_t next_right = right < hi ? right + 1 : right;
    if (next_left == left && next_right == right) break;
    if (!exists(next_left, next_right)) break;
    left = next_left;
    right = next_right;
  }
  return WindowSpan{left, right};
}

}  // namespace oracles
