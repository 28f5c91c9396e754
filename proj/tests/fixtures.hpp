#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>

#include "chunkmatch/textpipe.hpp"

namespace fixtures {

/// Content-word vocabulary for synthetic English documents. Disjoint from
/// the generator's invented filler vocabulary (asserted in tests).
inline const std::vector<std::string>& vocab() {
  static const std::vector<std::string> v = {
      // synonym-table keys
      "system", "method", "result", "value", "number", "process", "model",
      "student", "teacher", "paper", "word", "sentence", "document", "source",
      "search", "engine", "window", "phrase", "copy", "text", "data", "test",
      "case", "line", "page", "work", "part", "form", "place", "group",
      "problem", "fact", "point", "world", "house", "water", "room", "area",
      "money", "story", "book", "job", "business", "night", "question",
      "power", "country", "plant", "field", "road", "map", "science",
      "family", "river", "light", "name", "idea", "body", "music", "color",
      "stone", "wind", "rain", "cloud", "fire", "earth", "metal", "glass",
      // inflection-table bases
      "run", "walk", "jump", "play", "talk", "call", "ask", "need", "open",
      "start", "help", "turn", "follow", "show", "move", "use", "make",
      "take", "find", "tell", "report", "describe", "present", "consider",
      "explain", "compare", "measure", "record", "change", "study", "carry",
      "apply", "create", "include", "provide", "contain", "obtain", "remain",
      "appear", "develop", "produce", "reduce", "observe", "propose",
      "improve", "increase", "continue", "perform", "involve", "require",
      "suggest", "select", "collect", "detect", "expect",
      // extra content words
      "morning", "summer", "winter", "garden", "market", "village", "city",
      "street", "bridge", "mountain", "valley", "forest", "island", "ocean",
      "beach", "storm", "thunder", "flower", "grass", "bird", "horse",
      "farmer", "doctor", "nurse", "driver", "singer", "artist", "writer",
      "reader", "letter", "message", "signal", "station", "train", "plane",
      "ship", "harbor", "cargo", "trade", "price", "profit", "budget",
      "office", "factory", "machine", "device", "screen", "button", "wheel",
      "table", "chair", "floor", "wall", "door", "kitchen", "dinner",
      "coffee", "sugar", "bread", "cheese", "butter", "knife", "spoon",
      "plate", "bottle",
  };
  return v;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  if (n <= 1) return 0;
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

/// English-looking text: vocab words in sentences of 8-14 words.
inline std::string make_text(std::mt19937_64& rng, std::size_t n_words) {
  const auto& v = vocab();
  std::string text;
  std::size_t in_sentence = 0;
  std::size_t sentence_len = 8 + pick(rng, 7);
  for (std::size_t i = 0; i < n_words; ++i) {
    if (!text.empty()) text += ' ';
    text += v[pick(rng, v.size())];
    if (++in_sentence == sentence_len) {
      text += '.';
      in_sentence = 0;
      sentence_len = 8 + pick(rng, 7);
    }
  }
  if (in_sentence > 0) text += '.';
  text += '\n';
  return text;
}

inline chunkmatch::RawDocument make_doc(const std::string& doc_id,
                                        std::size_t n_words, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  chunkmatch::RawDocument d;
  d.doc_id = doc_id;
  d.text = make_text(rng, n_words);
  d.origin = "file://" + doc_id;
  return d;
}

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           (tag + "_" + std::to_string(rd()) + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string str() const { return path.string(); }
  std::filesystem::path operator/(const std::string& rel) const { return path / rel; }
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Two-column data file (word pairs), '#' comments.
inline std::vector<std::pair<std::string, std::string>> load_pairs(
    const std::string& path) {
  std::ifstream in(path);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string a, b;
    if (row >> a >> b) pairs.emplace_back(a, b);
  }
  return pairs;
}

#ifdef CHUNKMATCH_CLI_PATH
struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::string& args, const TempDir& scratch) {
  static int counter = 0;
  const auto out_path = scratch / ("cli_stdout_" + std::to_string(counter) + ".txt");
  const auto err_path = scratch / ("cli_stderr_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string(CHUNKMATCH_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
  r.out = read_file(out_path);
  r.err = read_file(err_path);
  return r;
}
#endif

}  // namespace fixtures
