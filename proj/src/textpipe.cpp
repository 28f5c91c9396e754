#include "chunkmatch/textpipe.hpp"

#include <cctype>
#include <fstream>

#include "chunkmatch/errors.hpp"
#include "chunkmatch/porter.hpp"

namespace chunkmatch {
namespace {

// ASCII alnum plus any non-ASCII byte (UTF-8 sequences stay inside tokens).
inline bool is_token_char(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

inline bool is_space(unsigned char c) { return std::isspace(c) != 0; }

// Counts newlines lazily while offsets advance monotonically.
struct LineCounter {
  const std::string& text;
  std::size_t pos = 0;
  std::size_t line = 1;

  std::size_t line_at(std::size_t offset) {
    for (; pos < offset; ++pos)
      if (text[pos] == '\n') ++line;
    return line;
  }
};

}  // namespace

std::string normalize_word(const std::string& surface) {
  std::string out;
  out.reserve(surface.size());
  for (unsigned char c : surface) {
    if (c == '\'') continue;
    if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c + ('a' - 'A'));
    out.push_back(static_cast<char>(c));
  }
  return out;
}

AnalyzedDocument analyze(const RawDocument& doc, const PipelineConfig& cfg) {
  AnalyzedDocument out;
  out.doc_id = doc.doc_id;
  out.origin = doc.origin;

  const std::string& text = doc.text;
  LineCounter lines{text};

  auto is_terminator = [&cfg](char c) {
    return cfg.sentence_terminators.find(c) != std::string::npos;
  };

  // Pages are form-feed delimited; sentences never cross a page break.
  std::size_t page_begin = 0;
  std::size_t page_no = 0;
  while (page_begin <= text.size()) {
    std::size_t ff = text.find('\f', page_begin);
    std::size_t page_end = (ff == std::string::npos) ? text.size() : ff;
    ++page_no;

    std::size_t seg_begin = page_begin;
    while (seg_begin < page_end) {
      // A sentence ends at a terminator followed by whitespace or page end.
      std::size_t seg_end = page_end;
      for (std::size_t i = seg_begin; i < page_end; ++i) {
        if (is_terminator(text[i]) &&
            (i + 1 == page_end || is_space(static_cast<unsigned char>(text[i + 1])))) {
          seg_end = i + 1;
          break;
        }
      }

      Sentence sentence;
      sentence.page_no = page_no;
      std::size_t i = seg_begin;
      while (i < seg_end) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (!is_token_char(c)) {
          ++i;
          continue;
        }
        std::size_t start = i;
        while (i < seg_end) {
          unsigned char cur = static_cast<unsigned char>(text[i]);
          if (is_token_char(cur)) {
            ++i;
          } else if (cur == '\'' && i > start && i + 1 < seg_end &&
                     is_token_char(static_cast<unsigned char>(text[i + 1]))) {
            ++i;  // internal apostrophe, as in "don't"
          } else {
            break;
          }
        }
        Token tok;
        tok.surface = text.substr(start, i - start);
        tok.normalized = normalize_word(tok.surface);
        if (tok.normalized.empty()) continue;  // pure punctuation, dropped
        tok.stem = porter_stem(tok.normalized);
        tok.char_span = {start, i};
        tok.line_no = lines.line_at(start);
        tok.page_no = page_no;
        tok.sentence_idx = out.sentences.size();
        tok.word_idx = sentence.tokens.size();
        sentence.tokens.push_back(std::move(tok));
      }

      if (!sentence.tokens.empty()) {
        sentence.sentence_idx = out.sentences.size();
        sentence.first_line = sentence.tokens.front().line_no;
        sentence.last_line = sentence.tokens.back().line_no;
        out.total_words += sentence.tokens.size();
        out.sentences.push_back(std::move(sentence));
      }
      seg_begin = seg_end;
    }

    if (ff == std::string::npos) break;
    page_begin = ff + 1;
  }

  out.page_count = page_no == 0 ? 1 : page_no;
  return out;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet words = {
      "a",    "about", "after", "all",  "also", "an",   "and",  "any",  "are",
      "as",   "at",    "be",    "been", "but",  "by",   "can",  "could", "did",
      "do",   "for",   "from",  "had",  "has",  "have", "he",   "her",  "his",
      "how",  "i",     "if",    "in",   "into", "is",   "it",   "its",  "just",
      "may",  "more",  "most",  "much", "my",   "no",   "not",  "of",   "on",
      "one",  "only",  "or",    "our",  "out",  "over", "she",  "so",   "some",
      "such", "than",  "that",  "the",  "their", "then", "there", "these",
      "they", "this",  "to",    "under", "up",  "was",  "we",   "were", "what",
      "when", "where", "which", "while", "who", "will", "with", "would", "you"};
  return words;
}

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword list: " + path);
  StopwordSet words = default_stopwords();
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.insert(normalize_word(line));
  }
  return words;
}

}  // namespace chunkmatch
