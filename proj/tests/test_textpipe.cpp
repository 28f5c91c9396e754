#include <string>
#include <vector>

#include "doctest.h"

#include "chunkmatch/errors.hpp"
#include "chunkmatch/textpipe.hpp"
#include "fixtures.hpp"

using namespace chunkmatch;

namespace {

AnalyzedDocument analyze_text(const std::string& text) {
  RawDocument raw;
  raw.doc_id = "t";
  raw.text = text;
  raw.origin = "mem";
  return analyze(raw);
}

std::vector<std::string> normalized_of(const Sentence& s) {
  std::vector<std::string> out;
  for (const Token& t : s.tokens) out.push_back(t.normalized);
  return out;
}

}  // namespace

TEST_CASE("sentences split on terminator plus whitespace") {
  AnalyzedDocument doc = analyze_text("Alpha beta gamma. Delta eps!");
  REQUIRE(doc.sentences.size() == 2);
  CHECK(normalized_of(doc.sentences[0]) ==
        std::vector<std::string>{"alpha", "beta", "gamma"});
  CHECK(normalized_of(doc.sentences[1]) == std::vector<std::string>{"delta", "eps"});
  CHECK(doc.sentences[0].sentence_idx == 0);
  CHECK(doc.sentences[1].sentence_idx == 1);
  CHECK(doc.total_words == 5);
}

TEST_CASE("terminator inside a number does not end the sentence") {
  AnalyzedDocument doc = analyze_text("pi is 3.14 roughly.");
  REQUIRE(doc.sentences.size() == 1);
  CHECK(normalized_of(doc.sentences[0]) ==
        std::vector<std::string>{"pi", "is", "3", "14", "roughly"});
}

TEST_CASE("trailing text without terminator forms the final sentence") {
  AnalyzedDocument doc = analyze_text("First one. second has no dot");
  REQUIRE(doc.sentences.size() == 2);
  CHECK(doc.sentences[1].tokens.size() == 4);
}

TEST_CASE("word_idx is contiguous from zero in every sentence") {
  AnalyzedDocument doc = analyze_text("One two three. Four five. Six!");
  for (const Sentence& s : doc.sentences)
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      CHECK(s.tokens[i].word_idx == i);
      CHECK(s.tokens[i].sentence_idx == s.sentence_idx);
    }
}

TEST_CASE("normalization lowercases and strips apostrophes, surface kept") {
  AnalyzedDocument doc = analyze_text("Don't STOP");
  REQUIRE(doc.sentences.size() == 1);
  const auto& toks = doc.sentences[0].tokens;
  REQUIRE(toks.size() == 2);
  CHECK(toks[0].surface == "Don't");
  CHECK(toks[0].normalized == "dont");
  CHECK(toks[1].normalized == "stop");
}

TEST_CASE("apostrophes only survive between letters") {
  AnalyzedDocument doc = analyze_text("'tis the rock' here");
  std::vector<std::string> all;
  for (const Sentence& s : doc.sentences)
    for (const Token& t : s.tokens) all.push_back(t.surface);
  CHECK(all == std::vector<std::string>{"tis", "the", "rock", "here"});
}

TEST_CASE("char_span points at the exact surface bytes") {
  const std::string text = "Some Words here. And MORE!";
  RawDocument raw{"t", text, "mem"};
  AnalyzedDocument doc = analyze(raw);
  for (const Sentence& s : doc.sentences)
    for (const Token& t : s.tokens) {
      REQUIRE(t.char_span.end <= text.size());
      CHECK(text.substr(t.char_span.begin, t.char_span.end - t.char_span.begin) ==
            t.surface);
    }
}

TEST_CASE("line numbers are global and sentences record their span") {
  AnalyzedDocument doc = analyze_text("one two\nthree. four\nfive.");
  REQUIRE(doc.sentences.size() == 2);
  const auto& s0 = doc.sentences[0];
  const auto& s1 = doc.sentences[1];
  CHECK(s0.tokens[0].line_no == 1);
  CHECK(s0.tokens[2].line_no == 2);
  CHECK(s0.first_line == 1);
  CHECK(s0.last_line == 2);
  CHECK(s1.tokens[0].line_no == 2);
  CHECK(s1.tokens[1].line_no == 3);
  CHECK(s1.first_line == 2);
  CHECK(s1.last_line == 3);
}

TEST_CASE("form feeds delimit pages and never merge sentences") {
  AnalyzedDocument doc = analyze_text("a b c.\fd e f.");
  CHECK(doc.page_count == 2);
  REQUIRE(doc.sentences.size() == 2);
  CHECK(doc.sentences[0].page_no == 1);
  CHECK(doc.sentences[1].page_no == 2);
  CHECK(doc.sentences[1].tokens[0].page_no == 2);
}

TEST_CASE("pathological inputs yield empty documents, not errors") {
  CHECK(analyze_text("").sentences.empty());
  CHECK(analyze_text("").page_count == 1);
  CHECK(analyze_text("... !!! ??").sentences.empty());
  CHECK(analyze_text("\f\f").sentences.empty());
  CHECK(analyze_text("...").total_words == 0);
}

TEST_CASE("ellipses never produce empty sentences") {
  AnalyzedDocument doc = analyze_text("Wait... what. hmm");
  for (const Sentence& s : doc.sentences) CHECK(!s.tokens.empty());
  CHECK(doc.total_words == 3);
}

TEST_CASE("bytes above 0x7f stay inside tokens") {
  AnalyzedDocument doc = analyze_text("caf\xc3\xa9 time");
  REQUIRE(doc.sentences.size() == 1);
  CHECK(doc.sentences[0].tokens[0].surface == "caf\xc3\xa9");
}

TEST_CASE("custom sentence terminators") {
  RawDocument raw{"t", "alpha beta; gamma delta", "mem"};
  PipelineConfig cfg;
  cfg.sentence_terminators = ";";
  AnalyzedDocument doc = analyze(raw, cfg);
  REQUIRE(doc.sentences.size() == 2);
  CHECK(doc.sentences[0].tokens.size() == 2);
}

TEST_CASE("normalize_word is idempotent") {
  for (const char* w : {"Hello", "DON'T", "MiXeD", "a'b'c", "42nd"}) {
    const std::string once = normalize_word(w);
    CHECK(normalize_word(once) == once);
  }
}

TEST_CASE("default stopwords hold common function words only") {
  const StopwordSet& sw = default_stopwords();
  CHECK(sw.count("the") == 1);
  CHECK(sw.count("and") == 1);
  CHECK(sw.count("of") == 1);
  CHECK(sw.count("window") == 0);
  CHECK(sw.count("search") == 0);
}

TEST_CASE("load_stopwords merges a file with the built-ins") {
  fixtures::TempDir tmp("stopwords");
  fixtures::write_file(tmp / "extra.txt", "zebra\n# note\nQUX\n");
  StopwordSet sw = load_stopwords((tmp / "extra.txt").string());
  CHECK(sw.count("zebra") == 1);
  CHECK(sw.count("qux") == 1);
  CHECK(sw.count("the") == 1);
  CHECK_THROWS_AS(load_stopwords((tmp / "absent.txt").string()), IoError);
}

TEST_CASE("analysis of generated fixture text is self-consistent") {
  chunkmatch::RawDocument doc = fixtures::make_doc("fix", 200, 11);
  AnalyzedDocument a = analyze(doc);
  CHECK(a.total_words == 200);
  std::size_t sum = 0;
  for (const Sentence& s : a.sentences) sum += s.tokens.size();
  CHECK(sum == a.total_words);
}
