#include "chunkmatch/web_backend.hpp"

#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "chunkmatch/errors.hpp"

namespace chunkmatch {

using nlohmann::json;

namespace {

MatchMode mode_from_string(const std::string& s) {
  return s == "stemmed" ? MatchMode::stemmed : MatchMode::exact;
}

// Splits "scheme://host[:port]" from the path part.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  std::size_t path_start = endpoint.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace

WebSearcher::WebSearcher(WebSearchConfig cfg) : cfg_(std::move(cfg)) {
  last_request_ = std::chrono::steady_clock::now() - cfg_.min_interval;
  if (cfg_.cache_path.empty()) return;
  std::ifstream in(cfg_.cache_path);
  if (!in) return;  // cache starts empty on first run
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.contains("phrase")) continue;
    std::vector<SourceHit> hits;
    for (const auto& h : rec.value("hits", json::array())) {
      std::string origin = h.value("origin", "");
      if (!origin.empty()) hits.push_back({origin, origin, std::nullopt, std::nullopt});
    }
    cache_[{static_cast<int>(mode_from_string(rec.value("mode", "exact"))),
            rec["phrase"].get<std::string>()}] = std::move(hits);
  }
}

std::vector<SourceHit> WebSearcher::locate(std::span<const std::string> phrase,
                                           MatchMode mode) {
  std::string joined = join_phrase(phrase);
  std::lock_guard<std::mutex> lock(mutex_);

  auto cached = cache_.find({static_cast<int>(mode), joined});
  if (cached != cache_.end()) return cached->second;

  if (queries_used_ >= cfg_.max_queries)
    throw BudgetError("web query budget exhausted (" + std::to_string(cfg_.max_queries) +
                      " queries per run)");

  auto elapsed = std::chrono::steady_clock::now() - last_request_;
  if (elapsed < cfg_.min_interval)
    std::this_thread::sleep_for(cfg_.min_interval - elapsed);

  ++queries_used_;
  last_request_ = std::chrono::steady_clock::now();
  std::vector<SourceHit> hits = fetch(joined);

  cache_[{static_cast<int>(mode), joined}] = hits;
  append_cache_line(mode, joined, hits);
  return hits;
}

std::vector<SourceHit> WebSearcher::fetch(const std::string& joined) {
  auto [base, path] = split_endpoint(cfg_.endpoint);
  httplib::Client client(base);
  client.set_connection_timeout(10);
  client.set_read_timeout(10);

  httplib::Params params{{"q", "\"" + joined + "\""}};
  if (!cfg_.api_key.empty()) params.emplace("key", cfg_.api_key);

  auto res = client.Get(path, params, httplib::Headers{});
  if (!res)
    throw TransportError("web search request failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw TransportError("web search returned HTTP " + std::to_string(res->status));

  json body = json::parse(res->body, nullptr, false);
  if (body.is_discarded())
    throw TransportError("web search returned unparseable response body");

  std::vector<SourceHit> hits;
  for (const auto& item : body.value("items", json::array())) {
    std::string link = item.value("link", "");
    if (!link.empty()) hits.push_back({link, link, std::nullopt, std::nullopt});
  }
  return hits;
}

void WebSearcher::append_cache_line(MatchMode mode, const std::string& joined,
                                    const std::vector<SourceHit>& hits) {
  if (cfg_.cache_path.empty()) return;
  json rec;
  rec["mode"] = to_string(mode);
  rec["phrase"] = joined;
  json arr = json::array();
  for (const SourceHit& h : hits) arr.push_back({{"origin", h.origin}});
  rec["hits"] = arr;
  std::ofstream out(cfg_.cache_path, std::ios::app);
  if (out) out << rec.dump() << '\n';
}

}  // namespace chunkmatch
