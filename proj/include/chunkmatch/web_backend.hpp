#pragma once

#include <chrono>
#include <map>
#include <mutex>
#include <string>

#include "chunkmatch/backend.hpp"

namespace chunkmatch {

/// Settings for the external web-search adapter. The API key comes from the
/// CHUNKMATCH_API_KEY environment variable, never from config files.
struct WebSearchConfig {
  std::string endpoint;  // e.g. "https://www.googleapis.com/customsearch/v1"
  std::string api_key;
  std::size_t max_queries = 50;          // network queries per run; >= 0
  std::chrono::milliseconds min_interval{1000};
  std::string cache_path;  // JSON-lines response cache; empty = no cache file
};

constexpr const char* kApiKeyEnvVar = "CHUNKMATCH_API_KEY";

/// Delegates phrase lookups to an external search API over HTTP. Issues one
/// quoted-phrase query per locate() call, returns origins without word
/// positions, and honors a per-run budget. Cached responses are free.
/// Outgoing requests are serialized; locate() may be called from any thread.
class WebSearcher : public PhraseSearcher {
 public:
  explicit WebSearcher(WebSearchConfig cfg);

  /// Throws BudgetError when the budget is spent, TransportError on network
  /// or HTTP failure.
  std::vector<SourceHit> locate(std::span<const std::string> phrase,
                                MatchMode mode) override;

  std::size_t queries_used() const { return queries_used_; }

 private:
  std::vector<SourceHit> fetch(const std::string& joined);
  void append_cache_line(MatchMode mode, const std::string& joined,
                         const std::vector<SourceHit>& hits);

  WebSearchConfig cfg_;
  std::map<std::pair<int, std::string>, std::vector<SourceHit>> cache_;
  std::size_t queries_used_ = 0;
  std::chrono::steady_clock::time_point last_request_;
  std::mutex mutex_;
};

}  // namespace chunkmatch
