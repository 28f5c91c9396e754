#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chunkmatch/textpipe.hpp"

namespace chunkmatch {

/// Taxonomy of generated plagiarism cases. The citation-style categories are
/// not represented: they differ only in citation metadata the detector never
/// inspects.
enum class PlagiarismType {
  photocopy,      // significant contiguous copy from a single source
  ghost_writer,   // whole work passed off as own; same surface form as photocopy
  potluck,        // excerpts from several sources stitched with connectives
  poor_disguise,  // verbatim base with keywords swapped for synonyms
  self_stealer,   // copy restricted to the author's own prior documents
  partial,        // 2-3 sources, the rest original filler
  full,           // entire source text, unchanged
  clean,          // no copied material at all
};

const char* to_string(PlagiarismType t);
PlagiarismType ptype_from_string(const std::string& name);

/// Half-open range of word positions [begin, end).
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const WordSpan&) const = default;
};

enum class SpanKind { exact, disguised };

/// Generator-emitted annotation: these target words came verbatim from these
/// source words (kind exact), or were synonym-substituted from them (kind
/// disguised).
struct GroundTruthSpan {
  WordSpan target_words;
  CharSpan target_chars;
  std::string source_id;
  WordSpan source_words;
  SpanKind kind = SpanKind::exact;
};

using SynonymTable = std::map<std::string, std::string>;

struct GenParams {
  double copy_fraction = 0.5;   // in [0,1]
  std::size_t n_sources = 2;
  double synonym_rate = 0.3;    // in [0,1]; poor_disguise only
  std::size_t target_words = 200;
  std::string own_prefix;       // self_stealer: doc_id prefix marking own prior work
  SynonymTable synonyms;        // poor_disguise only
  StopwordSet stopwords = default_stopwords();
};

struct GenCase {
  std::string case_id;
  PlagiarismType ptype = PlagiarismType::clean;
  std::uint64_t seed = 0;
  GenParams params;
  RawDocument output;
  std::vector<GroundTruthSpan> truth;
};

struct PlanEntry {
  PlagiarismType ptype = PlagiarismType::clean;
  GenParams params;
  std::size_t count = 1;
};

struct GeneratedCorpus {
  std::uint64_t seed = 0;
  std::vector<GenCase> cases;
};

/// Builds one synthetic case. Deterministic: a fixed (pool, ptype, params,
/// seed) tuple always produces byte-identical output. Throws ParameterError
/// on unsatisfiable parameters (empty pool, potluck over one document, ...).
GenCase generate_case(const std::vector<RawDocument>& pool, PlagiarismType ptype,
                      const GenParams& params, std::uint64_t seed);

/// Fans a plan out into cases with per-case seeds derived from the master
/// seed. Parameter errors name the offending plan entry.
GeneratedCorpus generate_suite(const std::vector<RawDocument>& pool,
                               const std::vector<PlanEntry>& plan, std::uint64_t seed);

/// Writes <out>/cases/<id>.txt, <out>/truth/<id>.json and <out>/manifest.json.
void write_corpus(const GeneratedCorpus& corpus, const std::string& out_dir);

/// Words used for non-copied text. Invented non-words, disjoint from any
/// English source vocabulary, so filler provably never matches a source.
const std::vector<std::string>& filler_vocabulary();

/// Two whitespace-separated columns per line: word, replacement. '#' comments.
SynonymTable load_synonyms(const std::string& path);

/// Plan file: one entry per line, "ptype,count,key=val,...". Recognized keys:
/// copy_fraction, n_sources, synonym_rate, target_words, own_prefix.
std::vector<PlanEntry> parse_plan_file(const std::string& path);

/// Manifest + truth files as read back for evaluation.
struct CorpusCaseRecord {
  std::string case_id;
  PlagiarismType ptype = PlagiarismType::clean;
  std::string case_file;   // relative to the corpus dir
  std::string truth_file;
  std::vector<GroundTruthSpan> truth;
};

struct CorpusManifest {
  std::uint64_t seed = 0;
  std::vector<CorpusCaseRecord> cases;
};

CorpusManifest load_corpus(const std::string& corpus_dir);

}  // namespace chunkmatch
