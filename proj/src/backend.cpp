#include "chunkmatch/backend.hpp"

namespace chunkmatch {

std::string join_phrase(std::span<const std::string> phrase) {
  std::string joined;
  for (std::size_t i = 0; i < phrase.size(); ++i) {
    if (i) joined.push_back(' ');
    joined.append(phrase[i]);
  }
  return joined;
}

std::vector<SourceHit> LocalSearcher::locate(std::span<const std::string> phrase,
                                             MatchMode mode) {
  std::vector<SourceHit> hits;
  for (const PhraseHit& h : index_.phrase_query(phrase, mode)) {
    const SourceRecord& src = index_.source(h.source_ord);
    hits.push_back({h.source_id, src.origin, h.start_word_pos, h.line_no});
  }
  return hits;
}

void StubSearcher::add(MatchMode mode, const std::string& joined_phrase,
                       std::vector<SourceHit> hits) {
  fixtures_[{static_cast<int>(mode), joined_phrase}] = std::move(hits);
}

std::vector<SourceHit> StubSearcher::locate(std::span<const std::string> phrase,
                                            MatchMode mode) {
  auto it = fixtures_.find({static_cast<int>(mode), join_phrase(phrase)});
  if (it == fixtures_.end()) return {};
  return it->second;
}

}  // namespace chunkmatch
