#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chunkmatch/refindex.hpp"

namespace chunkmatch {

/// One source a phrase was located in. Word positions and line numbers are
/// present for local hits and absent for web hits.
struct SourceHit {
  std::string source_id;
  std::string origin;  // nonempty
  std::optional<std::size_t> start_word_pos;
  std::optional<std::size_t> line_no;
};

/// The phrase-search contract the matcher talks to. locate() answers: where
/// does this token sequence occur verbatim? Implementations may throw
/// BudgetError or TransportError; callers degrade those to "not found".
class PhraseSearcher {
 public:
  virtual ~PhraseSearcher() = default;
  virtual std::vector<SourceHit> locate(std::span<const std::string> phrase,
                                        MatchMode mode) = 0;
};

/// Default backend: delegates to a ReferenceIndex and carries positions
/// through. Read-only, shareable across threads.
class LocalSearcher : public PhraseSearcher {
 public:
  explicit LocalSearcher(const ReferenceIndex& index) : index_(index) {}
  std::vector<SourceHit> locate(std::span<const std::string> phrase,
                                MatchMode mode) override;

 private:
  const ReferenceIndex& index_;
};

/// Test backend: returns exactly its configured fixture table, keyed by
/// (mode, space-joined phrase).
class StubSearcher : public PhraseSearcher {
 public:
  void add(MatchMode mode, const std::string& joined_phrase, std::vector<SourceHit> hits);
  std::vector<SourceHit> locate(std::span<const std::string> phrase,
                                MatchMode mode) override;

 private:
  std::map<std::pair<int, std::string>, std::vector<SourceHit>> fixtures_;
};

std::string join_phrase(std::span<const std::string> phrase);

}  // namespace chunkmatch
