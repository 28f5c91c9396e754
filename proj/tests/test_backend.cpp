#include <chrono>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "httplib.h"

#include "chunkmatch/backend.hpp"
#include "chunkmatch/errors.hpp"
#include "chunkmatch/web_backend.hpp"
#include "fixtures.hpp"

using namespace chunkmatch;

TEST_CASE("join_phrase uses single spaces") {
  const std::vector<std::string> phrase = {"one", "two", "three"};
  CHECK(join_phrase(phrase) == "one two three");
  CHECK(join_phrase({}) == "");
}

TEST_CASE("local adapter carries index answers through") {
  const auto docs = std::vector<AnalyzedDocument>{
      analyze(fixtures::make_doc("a", 80, 1)), analyze(fixtures::make_doc("b", 80, 2))};
  const ReferenceIndex idx = ReferenceIndex::build(docs);
  LocalSearcher local(idx);

  const std::vector<std::string> phrase = {docs[0].sentences[0].tokens[0].normalized,
                                           docs[0].sentences[0].tokens[1].normalized};
  const auto direct = idx.phrase_query(phrase, MatchMode::exact);
  const auto via = local.locate(phrase, MatchMode::exact);
  REQUIRE(via.size() == direct.size());
  for (std::size_t i = 0; i < via.size(); ++i) {
    CHECK(via[i].source_id == direct[i].source_id);
    REQUIRE(via[i].start_word_pos.has_value());
    CHECK(*via[i].start_word_pos == direct[i].start_word_pos);
    REQUIRE(via[i].line_no.has_value());
    CHECK(!via[i].origin.empty());
  }
}

TEST_CASE("stub returns exactly its fixture table") {
  StubSearcher stub;
  stub.add(MatchMode::exact, "alpha beta",
           {{"s1", "http://s1", 4, 1}});
  stub.add(MatchMode::stemmed, "alpha beta",
           {{"s2", "http://s2", 9, 2}});

  const std::vector<std::string> phrase = {"alpha", "beta"};
  auto ex = stub.locate(phrase, MatchMode::exact);
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].source_id == "s1");
  auto st = stub.locate(phrase, MatchMode::stemmed);
  REQUIRE(st.size() == 1);
  CHECK(st[0].source_id == "s2");

  const std::vector<std::string> unknown = {"gamma"};
  CHECK(stub.locate(unknown, MatchMode::exact).empty());
}

TEST_CASE("web adapter: zero budget fails before any transport") {
  WebSearchConfig cfg;
  cfg.endpoint = "http://127.0.0.1:1/api";  // closed port, never reached
  cfg.max_queries = 0;
  cfg.min_interval = std::chrono::milliseconds(0);
  WebSearcher web(cfg);
  const std::vector<std::string> phrase = {"alpha", "beta"};
  CHECK_THROWS_AS(web.locate(phrase, MatchMode::exact), BudgetError);
}

TEST_CASE("web adapter: recorded cache answers without budget or network") {
  fixtures::TempDir tmp("webcache");
  fixtures::write_file(
      tmp / "cache.jsonl",
      "{\"mode\":\"exact\",\"phrase\":\"alpha beta\",\"hits\":[{\"origin\":\"http://hit\"}]}\n"
      "{\"mode\":\"stemmed\",\"phrase\":\"alpha beta\",\"hits\":[]}\n");

  WebSearchConfig cfg;
  cfg.endpoint = "http://127.0.0.1:1/api";
  cfg.max_queries = 0;
  cfg.min_interval = std::chrono::milliseconds(0);
  cfg.cache_path = (tmp / "cache.jsonl").string();
  WebSearcher web(cfg);

  const std::vector<std::string> phrase = {"alpha", "beta"};
  auto hits = web.locate(phrase, MatchMode::exact);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].origin == "http://hit");
  CHECK(!hits[0].start_word_pos.has_value());
  CHECK(web.locate(phrase, MatchMode::stemmed).empty());
  CHECK(web.queries_used() == 0);

  const std::vector<std::string> other = {"gamma"};
  CHECK_THROWS_AS(web.locate(other, MatchMode::exact), BudgetError);
}

TEST_CASE("web adapter: unreachable endpoint is a transport error") {
  WebSearchConfig cfg;
  cfg.endpoint = "http://127.0.0.1:1/api";
  cfg.max_queries = 5;
  cfg.min_interval = std::chrono::milliseconds(0);
  WebSearcher web(cfg);
  const std::vector<std::string> phrase = {"alpha"};
  CHECK_THROWS_AS(web.locate(phrase, MatchMode::exact), TransportError);
}

TEST_CASE("web adapter against a loopback server") {
  httplib::Server srv;
  srv.Get("/api", [](const httplib::Request& req, httplib::Response& res) {
    if (req.get_param_value("q") == "\"alpha beta\"")
      res.set_content(
          "{\"items\":[{\"link\":\"http://example.com/a\"},"
          "{\"link\":\"http://example.com/b\"}]}",
          "application/json");
    else
      res.set_content("{\"items\":[]}", "application/json");
  });
  srv.Get("/flaky", [](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
  });
  srv.Get("/garbled", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json at all", "text/plain");
  });

  const int port = srv.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server_thread([&srv] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  const std::string base = "http://127.0.0.1:" + std::to_string(port);

  SUBCASE("hits parsed, cached, and budget counted once") {
    fixtures::TempDir tmp("webfetch");
    WebSearchConfig cfg;
    cfg.endpoint = base + "/api";
    cfg.max_queries = 1;
    cfg.min_interval = std::chrono::milliseconds(0);
    cfg.cache_path = (tmp / "cache.jsonl").string();
    WebSearcher web(cfg);

    const std::vector<std::string> phrase = {"alpha", "beta"};
    auto hits = web.locate(phrase, MatchMode::exact);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].origin == "http://example.com/a");
    CHECK(web.queries_used() == 1);

    // repeat is served from memory, not budget
    CHECK(web.locate(phrase, MatchMode::exact).size() == 2);
    CHECK(web.queries_used() == 1);

    // a second searcher replays the on-disk cache with no budget at all
    WebSearchConfig replay = cfg;
    replay.max_queries = 0;
    WebSearcher web2(replay);
    CHECK(web2.locate(phrase, MatchMode::exact).size() == 2);
  }

  SUBCASE("http failure and garbage bodies are transport errors") {
    WebSearchConfig cfg;
    cfg.max_queries = 5;
    cfg.min_interval = std::chrono::milliseconds(0);
    const std::vector<std::string> phrase = {"alpha"};

    cfg.endpoint = base + "/flaky";
    WebSearcher flaky(cfg);
    CHECK_THROWS_AS(flaky.locate(phrase, MatchMode::exact), TransportError);

    cfg.endpoint = base + "/garbled";
    WebSearcher garbled(cfg);
    CHECK_THROWS_AS(garbled.locate(phrase, MatchMode::exact), TransportError);
  }

  SUBCASE("queries are spaced by the minimum interval") {
    WebSearchConfig cfg;
    cfg.endpoint = base + "/api";
    cfg.max_queries = 2;
    cfg.min_interval = std::chrono::milliseconds(60);
    WebSearcher web(cfg);

    const std::vector<std::string> p1 = {"one"};
    const std::vector<std::string> p2 = {"two"};
    const auto t0 = std::chrono::steady_clock::now();
    web.locate(p1, MatchMode::exact);
    web.locate(p2, MatchMode::exact);
    const auto elapsed = std::chrono::steady_clock::now() - t0;
    CHECK(elapsed >= std::chrono::milliseconds(60));
  }

  srv.stop();
  server_thread.join();
}
