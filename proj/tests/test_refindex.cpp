#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"

#include "chunkmatch/errors.hpp"
#include "chunkmatch/refindex.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace chunkmatch;

namespace {

std::vector<AnalyzedDocument> fixture_corpus(std::size_t n_docs, std::size_t words,
                                             std::uint64_t seed) {
  std::vector<AnalyzedDocument> docs;
  for (std::size_t i = 0; i < n_docs; ++i)
    docs.push_back(
        analyze(fixtures::make_doc("doc" + std::to_string(i), words, seed + i)));
  return docs;
}

std::vector<oracles::Occurrence> as_occurrences(const std::vector<PhraseHit>& hits) {
  std::vector<oracles::Occurrence> out;
  for (const PhraseHit& h : hits) out.push_back({h.source_id, h.start_word_pos});
  return out;
}

// Random phrase: half the time lifted from a document (present), half the
// time random terms (usually absent).
std::vector<std::string> random_phrase(std::mt19937_64& rng,
                                       const std::vector<AnalyzedDocument>& docs,
                                       MatchMode mode) {
  const std::size_t len = 1 + fixtures::pick(rng, 5);
  std::vector<std::string> phrase;
  if (rng() % 2 == 0) {
    const auto terms =
        oracles::flat_terms(docs[fixtures::pick(rng, docs.size())], mode);
    const std::size_t start =
        fixtures::pick(rng, terms.size() > len ? terms.size() - len : 1);
    for (std::size_t i = 0; i < len && start + i < terms.size(); ++i)
      phrase.push_back(terms[start + i]);
  } else {
    const auto terms = oracles::flat_terms(docs[0], mode);
    for (std::size_t i = 0; i < len; ++i)
      phrase.push_back(terms[fixtures::pick(rng, terms.size())]);
  }
  return phrase;
}

}  // namespace

TEST_CASE("phrase_query equals the brute-force scan on random phrases") {
  const auto docs = fixture_corpus(5, 120, 101);
  const ReferenceIndex idx = ReferenceIndex::build(docs);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const MatchMode mode = trial % 2 == 0 ? MatchMode::exact : MatchMode::stemmed;
    const auto phrase = random_phrase(rng, docs, mode);
    std::string joined;
    for (const auto& w : phrase) joined += w + " ";
    CAPTURE(joined);
    CHECK(as_occurrences(idx.phrase_query(phrase, mode)) ==
          oracles::scan_phrase(docs, phrase, mode));
  }
}

TEST_CASE("hits come back ordered by source then position") {
  const auto docs = fixture_corpus(4, 150, 33);
  const ReferenceIndex idx = ReferenceIndex::build(docs);
  const auto terms = oracles::flat_terms(docs[1], MatchMode::exact);
  const std::vector<std::string> phrase = {terms[10]};
  const auto hits = idx.phrase_query(phrase, MatchMode::exact);
  REQUIRE(!hits.empty());
  for (std::size_t i = 1; i < hits.size(); ++i) {
    const bool ordered =
        hits[i - 1].source_id < hits[i].source_id ||
        (hits[i - 1].source_id == hits[i].source_id &&
         hits[i - 1].start_word_pos < hits[i].start_word_pos);
    CHECK(ordered);
  }
}

TEST_CASE("adjacency spans sentence boundaries within a source") {
  RawDocument raw{"x", "alpha beta. gamma delta.", "mem"};
  const ReferenceIndex idx = ReferenceIndex::build({analyze(raw)});
  const std::vector<std::string> phrase = {"beta", "gamma"};
  const auto hits = idx.phrase_query(phrase, MatchMode::exact);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].start_word_pos == 1);
}

TEST_CASE("build rejects duplicate doc ids and empty phrases are errors") {
  RawDocument a{"same", "one two.", "mem"};
  RawDocument b{"same", "three four.", "mem"};
  CHECK_THROWS_AS(ReferenceIndex::build({analyze(a), analyze(b)}), ParameterError);

  const ReferenceIndex idx = ReferenceIndex::build({analyze(a)});
  CHECK_THROWS_AS(idx.phrase_query({}, MatchMode::exact), ParameterError);
}

TEST_CASE("save/load round-trips query answers and bytes") {
  fixtures::TempDir tmp("refindex");
  const auto docs = fixture_corpus(3, 100, 55);
  const ReferenceIndex idx = ReferenceIndex::build(docs);
  const std::string path = (tmp / "ref.idx").string();
  idx.save(path);
  const ReferenceIndex loaded = ReferenceIndex::load(path);

  CHECK(loaded.sources().size() == idx.sources().size());
  CHECK(loaded.term_count(MatchMode::exact) == idx.term_count(MatchMode::exact));
  CHECK(loaded.term_count(MatchMode::stemmed) == idx.term_count(MatchMode::stemmed));

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const MatchMode mode = trial % 2 == 0 ? MatchMode::exact : MatchMode::stemmed;
    const auto phrase = random_phrase(rng, docs, mode);
    CHECK(as_occurrences(loaded.phrase_query(phrase, mode)) ==
          as_occurrences(idx.phrase_query(phrase, mode)));
  }

  const std::string resaved = (tmp / "ref2.idx").string();
  loaded.save(resaved);
  CHECK(fixtures::read_file(path) == fixtures::read_file(resaved));
}

TEST_CASE("corrupt and mismatched index files raise distinct errors") {
  fixtures::TempDir tmp("refindex_err");
  const auto docs = fixture_corpus(2, 80, 5);
  const std::string path = (tmp / "ref.idx").string();
  ReferenceIndex::build(docs).save(path);

  SUBCASE("missing file") {
    CHECK_THROWS_AS(ReferenceIndex::load((tmp / "nope.idx").string()), IoError);
  }
  SUBCASE("bad magic") {
    fixtures::write_file(tmp / "junk.idx", "definitely not an index");
    CHECK_THROWS_AS(ReferenceIndex::load((tmp / "junk.idx").string()),
                    CorruptFileError);
  }
  SUBCASE("truncated") {
    std::string bytes = fixtures::read_file(path);
    bytes.resize(bytes.size() / 2);
    fixtures::write_file(tmp / "short.idx", bytes);
    CHECK_THROWS_AS(ReferenceIndex::load((tmp / "short.idx").string()),
                    CorruptFileError);
  }
  SUBCASE("trailing garbage") {
    std::string bytes = fixtures::read_file(path);
    bytes += "extra";
    fixtures::write_file(tmp / "long.idx", bytes);
    CHECK_THROWS_AS(ReferenceIndex::load((tmp / "long.idx").string()),
                    CorruptFileError);
  }
  SUBCASE("newer version") {
    std::string bytes = fixtures::read_file(path);
    bytes[4] = '\x02';  // version u16 lives right after the 4 magic bytes
    fixtures::write_file(tmp / "v2.idx", bytes);
    CHECK_THROWS_AS(ReferenceIndex::load((tmp / "v2.idx").string()),
                    VersionMismatchError);
  }
}
